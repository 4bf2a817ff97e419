// radial_profile.cpp
#include "khess/radial_profile.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "khess/errors.hpp"

namespace khess {

namespace {

// Hermite basis on [x0, x0+h] in the local coordinate t.
struct Cell {
    double h, y0, y1, m0, m1;

    double value(double t) const
    {
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * m0 + (-2 * t3 + 3 * t2) * y1 +
               (t3 - t2) * h * m1;
    }
    double slope(double t) const
    {
        const double t2 = t * t;
        return ((6 * t2 - 6 * t) * y0 + (3 * t2 - 4 * t + 1) * h * m0 + (-6 * t2 + 6 * t) * y1 +
                (3 * t2 - 2 * t) * h * m1) /
               h;
    }
    double curvature(double t) const
    {
        return ((12 * t - 6) * y0 + (6 * t - 4) * h * m0 + (-12 * t + 6) * y1 + (6 * t - 2) * h * m1) /
               (h * h);
    }
};

} // namespace

std::string format_double(double x)
{
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

RadialProfile::RadialProfile(double R, Eigen::VectorXd r, Eigen::VectorXd u, Eigen::VectorXd du,
                             std::optional<Eigen::VectorXd> ddu, std::string meta)
    : R_(R), r_(std::move(r)), u_(std::move(u)), du_(std::move(du)), ddu_(std::move(ddu)),
      meta_(std::move(meta))
{
    const Eigen::Index n = r_.size();
    if (!(R_ > 0))
        throw ParameterError("RadialProfile: radius must be positive");
    if (n < 2)
        throw ParameterError("RadialProfile: need at least two nodes");
    if (u_.size() != n || du_.size() != n || (ddu_ && ddu_->size() != n))
        throw ParameterError("RadialProfile: column lengths differ");
    if (r_(0) != 0.0)
        throw ParameterError("RadialProfile: first node must be r = 0");
    for (Eigen::Index i = 1; i < n; ++i)
        if (!(r_(i) > r_(i - 1)))
            throw ParameterError("RadialProfile: grid must be strictly increasing");
    if (r_(n - 1) > R_)
        throw ParameterError("RadialProfile: last node lies outside the radius");
    const double dscale = 1.0 + du_.cwiseAbs().maxCoeff();
    if (std::abs(du_(0)) > 1e-12 * dscale)
        throw ParameterError("RadialProfile: du(0) must vanish for a radial C^1 function");
}

Eigen::Index RadialProfile::locate(double s) const
{
    const Eigen::Index n = r_.size();
    if (!(s >= 0.0) || s > r_(n - 1))
        throw DomainError("RadialProfile: evaluation point " + format_double(s) + " outside [0, " +
                          format_double(r_(n - 1)) + "]");
    const double* begin = r_.data();
    const double* it = std::upper_bound(begin, begin + n, s);
    Eigen::Index j = static_cast<Eigen::Index>(it - begin) - 1;
    return std::clamp<Eigen::Index>(j, 0, n - 2);
}

double RadialProfile::value(double s) const
{
    const Eigen::Index j = locate(s);
    const double h = r_(j + 1) - r_(j);
    const Cell c{h, u_(j), u_(j + 1), du_(j), du_(j + 1)};
    return c.value((s - r_(j)) / h);
}

double RadialProfile::slope(double s) const
{
    const Eigen::Index j = locate(s);
    const double h = r_(j + 1) - r_(j);
    const Cell c{h, u_(j), u_(j + 1), du_(j), du_(j + 1)};
    return c.slope((s - r_(j)) / h);
}

double RadialProfile::curvature(double s) const
{
    const Eigen::Index j = locate(s);
    const double h = r_(j + 1) - r_(j);
    const Cell c{h, u_(j), u_(j + 1), du_(j), du_(j + 1)};
    return c.curvature((s - r_(j)) / h);
}

double RadialProfile::interp_second(Eigen::Index i) const
{
    const Eigen::Index n = r_.size();
    auto right = [&](Eigen::Index j) {
        const double h = r_(j + 1) - r_(j);
        return Cell{h, u_(j), u_(j + 1), du_(j), du_(j + 1)}.curvature(0.0);
    };
    auto left = [&](Eigen::Index j) {
        const double h = r_(j) - r_(j - 1);
        return Cell{h, u_(j - 1), u_(j), du_(j - 1), du_(j)}.curvature(1.0);
    };
    if (i == 0) return right(0);
    if (i == n - 1) return left(n - 1);
    return 0.5 * (left(i) + right(i));
}

double RadialProfile::second(Eigen::Index i) const
{
    return ddu_ ? (*ddu_)(i) : interp_second(i);
}

void RadialProfile::write_csv(std::ostream& os, const Eigen::VectorXd* sk) const
{
    if (sk && sk->size() != r_.size())
        throw ParameterError("write_csv: sk column length differs from the grid");
    // exact u'' goes last so readers of r,u,du[,sk] are unaffected
    os << "r,u,du" << (sk ? ",sk" : "") << (ddu_ ? ",ddu" : "") << '\n';
    for (Eigen::Index i = 0; i < r_.size(); ++i) {
        os << format_double(r_(i)) << ',' << format_double(u_(i)) << ',' << format_double(du_(i));
        if (sk) os << ',' << format_double((*sk)(i));
        if (ddu_) os << ',' << format_double((*ddu_)(i));
        os << '\n';
    }
}

void RadialProfile::write_csv(const std::string& path, const Eigen::VectorXd* sk) const
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParameterError("cannot open " + path + " for writing");
    write_csv(f, sk);
}

RadialProfile RadialProfile::read_csv(std::istream& is, std::optional<double> R)
{
    std::string line;
    if (!std::getline(is, line))
        throw ParameterError("read_csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("r,u,du", 0) != 0)
        throw ParameterError("read_csv: header must start with r,u,du");
    std::vector<std::string> names;
    {
        std::stringstream hs(line);
        std::string name;
        while (std::getline(hs, name, ',')) names.push_back(name);
    }
    const auto it = std::find(names.begin(), names.end(), "ddu");
    const std::size_t ncol = it == names.end() ? 3 : static_cast<std::size_t>(it - names.begin()) + 1;
    std::vector<std::vector<double>> cols(ncol);
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        for (std::size_t c = 0; c < ncol; ++c) {
            if (!std::getline(ss, cell, ','))
                throw ParameterError("read_csv: short row '" + line + "'");
            double x = 0;
            auto res = std::from_chars(cell.data(), cell.data() + cell.size(), x);
            if (res.ec != std::errc())
                throw ParameterError("read_csv: bad number '" + cell + "'");
            cols[c].push_back(x);
        }
    }
    if (cols[0].empty()) throw ParameterError("read_csv: no rows");
    auto to_vec = [](const std::vector<double>& x) {
        return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(x.data(), Eigen::Index(x.size())));
    };
    std::optional<Eigen::VectorXd> ddu;
    if (it != names.end()) ddu = to_vec(cols.back());
    return RadialProfile(R.value_or(cols[0].back()), to_vec(cols[0]), to_vec(cols[1]), to_vec(cols[2]), std::move(ddu),
                         "csv");
}

RadialProfile RadialProfile::read_csv(const std::string& path, std::optional<double> R)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParameterError("cannot open " + path);
    return read_csv(f, R);
}

} // namespace khess
