#ifndef SNT_ZERODATA_HPP
#define SNT_ZERODATA_HPP

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "snt/errors.hpp"
#include "snt/numeric.hpp"

namespace snt {

/// Table of positive ordinates of nontrivial zeros, ascending.  Text format:
/// one ordinate per line, '#' starts a comment, blank lines ignored.

struct zero_table {
    std::vector<double> gamma;

    size_t size() const { return gamma.size(); }
    double max_height() const { return gamma.empty() ? 0.0 : gamma.back(); }

    /// index range [first, last) of ordinates inside [lo, hi]
    std::pair<size_t, size_t> range(double lo, double hi) const {
        auto a = std::lower_bound(gamma.begin(), gamma.end(), lo);
        auto b = std::upper_bound(gamma.begin(), gamma.end(), hi);
        return {size_t(a - gamma.begin()), size_t(b - gamma.begin())};
    }
};

/// local density of ordinates near height T (zeros per unit t)
inline double zero_density(double T) {
    if (T < 2.0 * PI * std::exp(1.0)) T = 2.0 * PI * std::exp(1.0);
    return std::log(T / (2.0 * PI)) / (2.0 * PI);
}

inline zero_table load_zeros(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open zero table: " + path);
    zero_table t;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        double v;
        if (!(ss >> v)) {
            std::string rest;
            if (ss.clear(), ss.str().find_first_not_of(" \t\r") == std::string::npos)
                continue;  // blank or comment-only line
            throw data_error("zero table " + path + ": unparsable line " +
                             std::to_string(lineno));
        }
        std::string trailing;
        if (ss >> trailing)
            throw data_error("zero table " + path + ": trailing junk on line " +
                             std::to_string(lineno));
        t.gamma.push_back(v);
    }
    if (t.gamma.empty()) throw data_error("zero table " + path + ": no entries");
    if (std::abs(t.gamma.front() - 14.134725141734694) > 1e-2)
        throw data_error("zero table " + path +
                         ": first ordinate is not the first zero");
    for (size_t i = 0; i + 1 < t.gamma.size(); ++i)
        if (!(t.gamma[i] < t.gamma[i + 1]))
            throw data_error("zero table " + path +
                             ": not strictly increasing at entry " +
                             std::to_string(i + 1));
    return t;
}

/// Index window of ordinates with |t - gamma| <= window, plus a mass bound
/// for the excluded ones.  Downstream sums weight each excluded ordinate by
/// a kernel bounded by |x|^{-3}; integrating that envelope against the
/// ordinate density log(T/2pi)/2pi gives ~ density/window^2 for both sides
/// combined.  The density is heuristic at desk heights, so a factor-2
/// margin is applied; the bound feeds error budgets only.
struct zero_window {
    size_t first = 0, last = 0;  // [first, last) into zero_table::gamma
    double tail_bound = 0.0;

    size_t count() const { return last - first; }
};

inline zero_window zeros_near(const zero_table& t, double center, double window) {
    if (!(window > 0.0)) throw domain_error("zeros_near: window must be positive");
    if (center + window > t.max_height())
        throw coverage_error("zeros_near: window [" + std::to_string(center - window) +
                             ", " + std::to_string(center + window) +
                             "] reaches past the table top " +
                             std::to_string(t.max_height()));
    auto [a, b] = t.range(center - window, center + window);
    double bound = 2.0 * zero_density(center + window) / (window * window);
    return {a, b, bound};
}

/// Default table: $SNT_ZEROS if set, else the bundled data file.
/// Loaded once and cached for the process lifetime.
inline const zero_table& default_zeros() {
    static zero_table table;
    static std::once_flag flag;
    std::call_once(flag, [] {
        const char* env = std::getenv("SNT_ZEROS");
        std::string path = env && *env
                               ? std::string(env)
                               : std::string(SNT_SOURCE_DIR "/data/zeros_10k.txt");
        table = load_zeros(path);
    });
    return table;
}

}  // namespace snt

#endif
