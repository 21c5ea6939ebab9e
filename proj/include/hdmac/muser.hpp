#pragma once

#include "hdmac/channel.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hdmac {

inline constexpr int kMaxUsers = 6;

/// Gaussian m-user channel. k_user(k, j) is the amplitude from user k to user j;
/// the diagonal is ignored.
struct MUserGains {
    int m = 2;
    Eigen::MatrixXd k_user;
    Eigen::VectorXd k_dest;
    double noise = 1.0;

    void validate() const;
    bool operator==(const MUserGains& o) const;
};

/// Slot k < m belongs to user k alone; slot m is shared. In the shared slot user k
/// sends sqrt(p_priv) X_k + sqrt(p_coop) S with unit-variance independent parts.
struct MUserAllocation {
    Eigen::VectorXd slots;   // m + 1 fractions
    Eigen::VectorXd p_solo;
    Eigen::VectorXd p_priv;
    Eigen::VectorXd p_coop;

    /// Throws ValidationError on a size mismatch, a negative entry, slots not
    /// summing to 1, or a user whose energy differs from its budget by > 1e-9.
    void validate(int m, const Eigen::VectorXd& budgets) const;
    bool operator==(const MUserAllocation& o) const;
};

/// One rate constraint. For a subset bound, `users` is the mask of T and the bound
/// limits sum_{k in T} R_k. For a total bound, `users` is the mask of Lambda (the
/// users whose cooperative part is counted at the partners) and the bound limits
/// the total rate.
struct MUserConstraint {
    bool total = false;
    std::uint32_t users = 0;
    double bound = 0.0;

    /// "T={1,3}" or "Lambda={2}", users numbered from 1.
    std::string descriptor() const;
};

/// Subset bounds for T = 1 .. 2^m - 1 (mask order), then total bounds for
/// Lambda = 0 .. 2^m - 1.
std::vector<MUserConstraint> muser_achievable_constraints(const MUserGains& g, const MUserAllocation& a,
                                                          const Eigen::VectorXd& budgets);

/// Same layout; the solo terms use the joint observation of the destination and
/// all partners.
std::vector<MUserConstraint> muser_outer_constraints(const MUserGains& g, const MUserAllocation& a,
                                                     const Eigen::VectorXd& budgets);

struct ConditionReport {
    bool holds = true;
    std::vector<std::pair<int, int>> failing;  // (k, j), 0-based: k_user(k, j) < k_dest(k)
};

/// Whether every inter-user link is at least as strong as the sender's direct link.
ConditionReport muser_condition_check(const MUserGains& g);

/// The explicit three-user region: the seven subset bounds ordered
/// R1, R2, R3, R1+R2, R1+R3, R2+R3, R1+R2+R3, then the total bound with every
/// cooperative part counted at the destination.
std::vector<double> three_user_region(const MUserGains& g, const MUserAllocation& a,
                                      const Eigen::VectorXd& budgets);

}  // namespace hdmac
