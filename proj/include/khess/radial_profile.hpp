// radial_profile.hpp
#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <optional>
#include <string>

namespace khess {

/// Sampled radial function u(r) with first-derivative data on a grid
/// 0 = r_0 < r_1 < ... < r_N <= R.
///
/// Values between nodes come from the cubic Hermite interpolant of (u, du).
/// An optional column of exact second derivatives is carried when the
/// producer knows them (closed-form barriers, ODE right-hand sides);
/// otherwise second derivatives are read off the interpolant.
class RadialProfile {
public:
    RadialProfile() = default;
    RadialProfile(double R, Eigen::VectorXd r, Eigen::VectorXd u, Eigen::VectorXd du,
                  std::optional<Eigen::VectorXd> ddu = std::nullopt, std::string meta = {});

    double radius() const { return R_; }
    Eigen::Index size() const { return r_.size(); }
    const Eigen::VectorXd& r() const { return r_; }
    const Eigen::VectorXd& u() const { return u_; }
    const Eigen::VectorXd& du() const { return du_; }
    const std::optional<Eigen::VectorXd>& ddu() const { return ddu_; }
    const std::string& meta() const { return meta_; }
    void set_meta(std::string m) { meta_ = std::move(m); }

    bool has_exact_second() const { return ddu_.has_value(); }

    /// Exact second derivative when stored, interpolant estimate otherwise.
    double second(Eigen::Index i) const;

    /// Second derivative of the Hermite interpolant at node i: the mean of
    /// the one-sided limits at interior nodes, one-sided at the last node.
    /// At r = 0 the one-sided limit equals the even-reflection average.
    double interp_second(Eigen::Index i) const;

    /// Interpolant value, slope and curvature at 0 <= s <= r_N.
    double value(double s) const;
    double slope(double s) const;
    double curvature(double s) const;

    /// Writes `r,u,du` (plus `,sk` when given) with 17 significant digits.
    void write_csv(std::ostream& os, const Eigen::VectorXd* sk = nullptr) const;
    void write_csv(const std::string& path, const Eigen::VectorXd* sk = nullptr) const;

    /// Reads the CSV format above; R defaults to the last node.
    static RadialProfile read_csv(std::istream& is, std::optional<double> R = std::nullopt);
    static RadialProfile read_csv(const std::string& path, std::optional<double> R = std::nullopt);

private:
    Eigen::Index locate(double s) const;

    double R_ = 0.0;
    Eigen::VectorXd r_, u_, du_;
    std::optional<Eigen::VectorXd> ddu_;
    std::string meta_;
};

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double x);

} // namespace khess
