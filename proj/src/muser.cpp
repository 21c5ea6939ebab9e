#include "hdmac/muser.hpp"

#include <cmath>
#include <sstream>

namespace hdmac {

namespace {

double in_slot(double fraction, double snr)
{
    return fraction == 0.0 ? 0.0 : fraction * c_gauss(snr);
}

template <class A, class B>
bool same(const A& a, const B& b)
{
    return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

bool has(std::uint32_t mask, int k) { return (mask >> k) & 1u; }

void check_vector(const Eigen::VectorXd& v, int size, const char* name)
{
    if (v.size() != size) {
        std::ostringstream msg;
        msg << "MUserAllocation: " << name << " needs " << size << " entries (got " << v.size() << ")";
        throw ValidationError(msg.str());
    }
    if (!(v.array() >= 0.0).all() || !v.allFinite())
        throw ValidationError(std::string("MUserAllocation: ") + name + " entries must be finite and >= 0");
}

// Per-user slot-k rates at the weakest partner (or, for the outer bound, at the
// destination and all partners together) and at the destination.
struct SoloTerms {
    Eigen::VectorXd cooperative;
    Eigen::VectorXd direct;
};

SoloTerms solo_terms(const MUserGains& g, const MUserAllocation& a, bool outer)
{
    const int m = g.m;
    SoloTerms t{Eigen::VectorXd::Zero(m), Eigen::VectorXd::Zero(m)};
    for (int k = 0; k < m; ++k) {
        const double q0 = g.k_dest[k] * g.k_dest[k];
        double gain = 0.0;
        if (outer) {
            gain = q0;
            for (int j = 0; j < m; ++j) {
                if (j != k) gain += g.k_user(k, j) * g.k_user(k, j);
            }
        } else {
            gain = INFINITY;
            for (int j = 0; j < m; ++j) {
                if (j != k) gain = std::min(gain, g.k_user(k, j) * g.k_user(k, j));
            }
        }
        t.cooperative[k] = in_slot(a.slots[k], gain * a.p_solo[k] / g.noise);
        t.direct[k] = in_slot(a.slots[k], q0 * a.p_solo[k] / g.noise);
    }
    return t;
}

// Shared-slot term for a subset T: S and the other users' codewords are known,
// leaving only T's private layers.
double shared_given_s(const MUserGains& g, const MUserAllocation& a, std::uint32_t t)
{
    double snr = 0.0;
    for (int k = 0; k < g.m; ++k) {
        if (has(t, k)) snr += g.k_dest[k] * g.k_dest[k] * a.p_priv[k];
    }
    return in_slot(a.slots[g.m], snr / g.noise);
}

double shared_coherent(const MUserGains& g, const MUserAllocation& a)
{
    double priv = 0.0, amp = 0.0;
    for (int k = 0; k < g.m; ++k) {
        priv += g.k_dest[k] * g.k_dest[k] * a.p_priv[k];
        amp += g.k_dest[k] * std::sqrt(a.p_coop[k]);
    }
    return in_slot(a.slots[g.m], (priv + amp * amp) / g.noise);
}

std::vector<MUserConstraint> constraints(const MUserGains& g, const MUserAllocation& a,
                                         const Eigen::VectorXd& budgets, bool outer)
{
    g.validate();
    a.validate(g.m, budgets);
    const SoloTerms solo = solo_terms(g, a, outer);
    const std::uint32_t full = (1u << g.m) - 1u;

    std::vector<MUserConstraint> out;
    for (std::uint32_t t = 1; t <= full; ++t) {
        double bound = shared_given_s(g, a, t);
        for (int k = 0; k < g.m; ++k) {
            if (has(t, k)) bound += solo.cooperative[k];
        }
        out.push_back({false, t, bound});
    }
    const double coherent = shared_coherent(g, a);
    for (std::uint32_t lambda = 0; lambda <= full; ++lambda) {
        double bound = coherent;
        for (int k = 0; k < g.m; ++k) bound += has(lambda, k) ? solo.cooperative[k] : solo.direct[k];
        out.push_back({true, lambda, bound});
    }
    return out;
}

}  // namespace

bool MUserGains::operator==(const MUserGains& o) const
{
    return m == o.m && same(k_user, o.k_user) && same(k_dest, o.k_dest) && noise == o.noise;
}

bool MUserAllocation::operator==(const MUserAllocation& o) const
{
    return same(slots, o.slots) && same(p_solo, o.p_solo) && same(p_priv, o.p_priv) && same(p_coop, o.p_coop);
}

void MUserGains::validate() const
{
    if (m < 2 || m > kMaxUsers) {
        std::ostringstream msg;
        msg << "MUserGains: m must lie in [2, " << kMaxUsers << "] (got " << m << ")";
        throw ValidationError(msg.str());
    }
    if (k_user.rows() != m || k_user.cols() != m || k_dest.size() != m)
        throw ValidationError("MUserGains: k_user must be m x m and k_dest length m");
    Eigen::MatrixXd off = k_user;
    off.diagonal().setZero();
    if (!off.allFinite() || (off.array() < 0.0).any() || !k_dest.allFinite() || (k_dest.array() < 0.0).any())
        throw ValidationError("MUserGains: gains must be finite and >= 0");
    if (!(noise > 0.0) || !std::isfinite(noise)) throw ValidationError("MUserGains: noise must be > 0");
}

void MUserAllocation::validate(int m, const Eigen::VectorXd& budgets) const
{
    check_vector(slots, m + 1, "slots");
    check_vector(p_solo, m, "p_solo");
    check_vector(p_priv, m, "p_priv");
    check_vector(p_coop, m, "p_coop");
    if (budgets.size() != m) throw ValidationError("MUserAllocation: budgets need m entries");
    if (std::abs(slots.sum() - 1.0) > kSlotTolerance) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "MUserAllocation: slots must sum to 1 (got " << slots.sum() << ")";
        throw ValidationError(msg.str());
    }
    for (int k = 0; k < m; ++k) {
        const double used = slots[k] * p_solo[k] + slots[m] * (p_priv[k] + p_coop[k]);
        if (std::abs(used - budgets[k]) > kPowerTolerance) {
            std::ostringstream msg;
            msg.precision(12);
            msg << "MUserAllocation: user " << k + 1 << " spends " << used << " of budget " << budgets[k];
            throw ValidationError(msg.str());
        }
    }
}

std::string MUserConstraint::descriptor() const
{
    std::ostringstream out;
    out << (total ? "Lambda={" : "T={");
    bool first = true;
    for (int k = 0; k < 32; ++k) {
        if (!has(users, k)) continue;
        out << (first ? "" : ",") << k + 1;
        first = false;
    }
    out << '}';
    return out.str();
}

std::vector<MUserConstraint> muser_achievable_constraints(const MUserGains& g, const MUserAllocation& a,
                                                          const Eigen::VectorXd& budgets)
{
    return constraints(g, a, budgets, false);
}

std::vector<MUserConstraint> muser_outer_constraints(const MUserGains& g, const MUserAllocation& a,
                                                     const Eigen::VectorXd& budgets)
{
    return constraints(g, a, budgets, true);
}

ConditionReport muser_condition_check(const MUserGains& g)
{
    g.validate();
    ConditionReport r;
    for (int k = 0; k < g.m; ++k) {
        for (int j = 0; j < g.m; ++j) {
            if (j != k && g.k_user(k, j) < g.k_dest[k]) r.failing.emplace_back(k, j);
        }
    }
    r.holds = r.failing.empty();
    return r;
}

std::vector<double> three_user_region(const MUserGains& g, const MUserAllocation& a,
                                      const Eigen::VectorXd& budgets)
{
    if (g.m != 3) throw ValidationError("three_user_region: needs m = 3");
    g.validate();
    a.validate(3, budgets);
    const SoloTerms solo = solo_terms(g, a, false);
    auto pair = [&](int i, int j) { return solo.cooperative[i] + solo.cooperative[j]; };
    const double all = solo.cooperative.sum();
    return {
        solo.cooperative[0] + shared_given_s(g, a, 0b001),
        solo.cooperative[1] + shared_given_s(g, a, 0b010),
        solo.cooperative[2] + shared_given_s(g, a, 0b100),
        pair(0, 1) + shared_given_s(g, a, 0b011),
        pair(0, 2) + shared_given_s(g, a, 0b101),
        pair(1, 2) + shared_given_s(g, a, 0b110),
        all + shared_given_s(g, a, 0b111),
        solo.direct.sum() + shared_coherent(g, a),
    };
}

}  // namespace hdmac
