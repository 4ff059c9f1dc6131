#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcg/errors.hpp"

namespace qcg {

/// Samples (abscissa, value) with strictly increasing abscissae.
class RadialTable {
public:
    RadialTable() = default;

    RadialTable(std::vector<double> abscissae, std::vector<double> values)
        : x_(std::move(abscissae)), y_(std::move(values)) {
        if (x_.size() != y_.size()) {
            throw ParseError("RadialTable: column lengths differ");
        }
        if (x_.size() < 2) {
            throw ParseError("RadialTable: at least two samples are required");
        }
        for (std::size_t i = 0; i < x_.size(); ++i) {
            if (!std::isfinite(x_[i]) || !std::isfinite(y_[i])) {
                throw ParseError("RadialTable: non-finite sample");
            }
            if (i > 0 && !(x_[i] > x_[i - 1])) {
                throw ParseError("RadialTable: abscissae must be strictly increasing");
            }
        }
    }

    const std::vector<double>& abscissae() const noexcept { return x_; }
    const std::vector<double>& values() const noexcept { return y_; }
    double front() const noexcept { return x_.front(); }
    double back() const noexcept { return x_.back(); }
    bool contains(double t) const noexcept { return t >= x_.front() && t <= x_.back(); }

    /// Linear interpolation in the abscissa.
    double interpolate_linear(double t) const { return interpolate(t, false); }

    /// Linear interpolation of the value against log(abscissa).
    double interpolate_log(double t) const { return interpolate(t, true); }

private:
    double interpolate(double t, bool in_log) const {
        if (!contains(t)) {
            throw DomainError("RadialTable: " + std::to_string(t) + " outside [" +
                              std::to_string(x_.front()) + ", " + std::to_string(x_.back()) + "]");
        }
        const auto hi_it = std::upper_bound(x_.begin(), x_.end(), t);
        if (hi_it == x_.end()) {
            return y_.back();
        }
        const auto hi = static_cast<std::size_t>(hi_it - x_.begin());
        const auto lo = hi - 1;
        if (t == x_[lo]) {
            return y_[lo];
        }
        const double s = in_log ? std::log(t / x_[lo]) / std::log(x_[hi] / x_[lo])
                                : (t - x_[lo]) / (x_[hi] - x_[lo]);
        return y_[lo] + s * (y_[hi] - y_[lo]);
    }

    std::vector<double> x_;
    std::vector<double> y_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline bool parse_double(std::string_view s, double& out) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc{} && ptr == end && !s.empty();
}

}  // namespace detail

/// Reads a two-column comma-separated table. A non-numeric first line is
/// treated as a header; blank lines are skipped.
inline RadialTable read_radial_table(std::istream& in) {
    std::vector<double> xs;
    std::vector<double> ys;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto view = detail::trim(line);
        if (view.empty()) {
            continue;
        }
        const auto comma = view.find(',');
        double x = 0.0;
        double y = 0.0;
        const bool ok = comma != std::string_view::npos &&
                        view.find(',', comma + 1) == std::string_view::npos &&
                        detail::parse_double(view.substr(0, comma), x) &&
                        detail::parse_double(view.substr(comma + 1), y);
        if (!ok) {
            if (xs.empty() && lineno == 1) {
                continue;  // header
            }
            throw ParseError("radial table line " + std::to_string(lineno) +
                             ": expected two numeric columns");
        }
        xs.push_back(x);
        ys.push_back(y);
    }
    return RadialTable(std::move(xs), std::move(ys));
}

inline RadialTable load_radial_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open radial table '" + path + "'");
    }
    return read_radial_table(in);
}

}  // namespace qcg
