#include "betamom/csv.hpp"

#include <charconv>
#include <cmath>

namespace betamom {

std::string format_full(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

void write_csv(const Trajectory& traj, std::ostream& os) {
    const auto dim = traj.iterates.empty() ? 0 : traj.iterates.front().size();
    os << "k";
    for (Eigen::Index j = 0; j < dim; ++j) os << ",x" << j;
    for (Eigen::Index j = 0; j < dim; ++j) os << ",v" << j;
    os << ",gap,grad_norm\n";
    for (size_t k = 0; k < traj.iterates.size(); ++k) {
        os << k;
        for (Eigen::Index j = 0; j < dim; ++j) {
            os << ',' << format_full(traj.iterates[k][j]);
        }
        const bool has_v = k < traj.velocities.size();
        for (Eigen::Index j = 0; j < dim; ++j) {
            os << ',' << (has_v ? format_full(traj.velocities[k][j]) : "nan");
        }
        os << ',' << format_full(traj.gaps[k]) << ',' << format_full(traj.grad_norms[k])
           << '\n';
    }
}

void write_csv(const OdeSolution& sol, const Objective& obj, std::ostream& os) {
    const auto dim = sol.positions.empty() ? 0 : sol.positions.front().size();
    os << "t";
    for (Eigen::Index j = 0; j < dim; ++j) os << ",X" << j;
    for (Eigen::Index j = 0; j < dim; ++j) os << ",V" << j;
    os << ",gap\n";
    for (size_t i = 0; i < sol.positions.size(); ++i) {
        os << format_full(sol.times[i]);
        for (Eigen::Index j = 0; j < dim; ++j) os << ',' << format_full(sol.positions[i][j]);
        for (Eigen::Index j = 0; j < dim; ++j) os << ',' << format_full(sol.velocities[i][j]);
        os << ',' << format_full(obj.gap(sol.positions[i])) << '\n';
    }
}

void write_csv(const EnergySeries& series, std::ostream& os) {
    os << "k,E,dE,rhs,violated\n";
    size_t next_violation = 0;
    for (size_t i = 0; i < series.values.size(); ++i) {
        const bool violated =
            next_violation < series.violations.size() &&
            series.violations[next_violation] == static_cast<int>(i);
        if (violated) ++next_violation;
        os << format_full(series.index[i]) << ',' << format_full(series.values[i]) << ','
           << (std::isnan(series.decrements[i]) ? "nan" : format_full(series.decrements[i]))
           << ','
           << (std::isnan(series.bound_rhs[i]) ? "nan" : format_full(series.bound_rhs[i]))
           << ',' << (violated ? 1 : 0) << '\n';
    }
}

}  // namespace betamom
