#include "hdmac/optimizer.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

namespace hdmac {

namespace {

constexpr int kLocalRounds = 5;
constexpr double kCornerSlot = 1e-4;  // slots below this get the opening directions of polish
constexpr double kTieTilt = 1e-9;

// Search variables: three slot fractions, then each user's budget shares in the
// atom order of allocation_from_shares.
class Problem {
public:
    Problem(const ChannelGains& g, const PowerBudget& budget, Scheme scheme, const SchemeOptions& opts)
        : g_(g), budget_(budget), scheme_(scheme), opts_(opts), atoms_(is_pdf(scheme) ? 5 : 3)
    {
    }

    int atoms() const { return atoms_; }

    // Slot (0, 1, 2) whose duration carries an atom of user u (0 or 1).
    int atom_slot(int user, int atom) const { return atom < (atoms_ == 5 ? 2 : 1) ? user : 2; }
    int dims() const { return 3 + 2 * atoms_; }

    // Atom pairs (user 1, user 2) whose slot-3 energies add coherently.
    std::vector<std::pair<int, int>> beams() const
    {
        if (atoms_ == 5) return {{3, 4}, {4, 3}};
        return {{2, 2}};
    }

    TimeSlots slots_of(const double* x) const { return TimeSlots{x[0], x[1], x[2]}; }

    Allocation allocation_of(const double* x) const
    {
        const std::size_t n = static_cast<std::size_t>(atoms_);
        return allocation_from_shares(scheme_, budget_, slots_of(x), {x + 3, n}, {x + 3 + n, n});
    }

    LinearRegion region(const double* x) const
    {
        return scheme_region(scheme_, g_, slots_of(x), allocation_of(x), opts_);
    }

    // (min r1, min r2, min sum) of the region at x.
    Eigen::Vector3d minima(const double* x) const
    {
        const LinearRegion r = region(x);
        return {r.min_r1(), r.min_r2(), r.min_sum()};
    }

    Scheme scheme() const { return scheme_; }

private:
    ChannelGains g_;
    PowerBudget budget_;
    Scheme scheme_;
    SchemeOptions opts_;
    int atoms_;
};

// Best vertex of {r1 <= a, r2 <= b, r1 + r2 <= s} for weights mu, with the same
// tie-breaking as weighted_best_vertex.
Rate best_corner(const Eigen::Vector3d& m, const Eigen::Vector2d& mu)
{
    const double a = m[0], b = m[1], s = m[2];
    if (mu.x() >= mu.y()) {
        const double x1 = std::min(a, s);
        return {x1, std::max(0.0, std::min(b, s - x1))};
    }
    const double x2 = std::min(b, s);
    return {std::max(0.0, std::min(a, s - x2)), x2};
}

// All compositions of `total` into `parts` non-negative integers, lexicographic.
std::vector<std::vector<int>> compositions(int total, int parts)
{
    std::vector<std::vector<int>> out;
    std::vector<int> c(static_cast<std::size_t>(parts), 0);
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == parts - 1) {
            c[static_cast<std::size_t>(i)] = left;
            out.push_back(c);
            return;
        }
        for (int k = left; k >= 0; --k) {
            c[static_cast<std::size_t>(i)] = k;
            self(self, i + 1, left - k);
        }
    };
    rec(rec, 0, total);
    return out;
}

std::vector<std::vector<double>> simplex_lattice(int points_per_axis, int parts)
{
    const int divisions = points_per_axis - 1;
    std::vector<std::vector<double>> out;
    for (const auto& c : compositions(divisions, parts)) {
        std::vector<double> f(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) f[i] = static_cast<double>(c[i]) / divisions;
        out.push_back(std::move(f));
    }
    return out;
}

struct Candidate {
    std::vector<double> x;
    double value = -1.0;
};

// One pass over the lattice shared by all directions; ties keep the earliest point.
std::vector<Candidate> grid_scan(const Problem& p, const std::vector<Eigen::Vector2d>& dirs,
                                 const SearchConfig& cfg, long& evaluations)
{
    const auto slot_pts = simplex_lattice(cfg.slot_grid, 3);
    const auto user_pts = simplex_lattice(cfg.power_grid, p.atoms());
    const std::size_t n = static_cast<std::size_t>(p.atoms());

    std::vector<Candidate> best(dirs.size());
    std::vector<double> x(static_cast<std::size_t>(p.dims()));
    for (const auto& s : slot_pts) {
        std::copy(s.begin(), s.end(), x.begin());
        for (const auto& u1 : user_pts) {
            std::copy(u1.begin(), u1.end(), x.begin() + 3);
            for (const auto& u2 : user_pts) {
                std::copy(u2.begin(), u2.end(), x.begin() + 3 + static_cast<long>(n));
                const Eigen::Vector3d m = p.minima(x.data());
                ++evaluations;
                for (std::size_t k = 0; k < dirs.size(); ++k) {
                    const double v = dirs[k].dot(best_corner(m, dirs[k]));
                    if (v > best[k].value) best[k] = {x, v};
                }
            }
        }
    }
    return best;
}

// Objective pieces whose minimum is the weighted value of the best vertex:
// for mu1 >= mu2, min(mu1 a + mu2 b, (mu1 - mu2) a + mu2 s, mu1 s) over every
// listed bound; mirrored otherwise.
void weighted_pieces(const LinearRegion& r, const Eigen::Vector2d& mu, std::vector<double>& out)
{
    const bool first = mu.x() >= mu.y();
    const auto& own = first ? r.r1_bounds : r.r2_bounds;
    const auto& other = first ? r.r2_bounds : r.r1_bounds;
    const double hi = first ? mu.x() : mu.y();
    const double lo = first ? mu.y() : mu.x();
    out.clear();
    for (double a : own) {
        for (double b : other) out.push_back(hi * a + lo * b);
        for (double s : r.sum_bounds) out.push_back((hi - lo) * a + lo * s);
    }
    for (double s : r.sum_bounds) out.push_back(hi * s);
}

Candidate refine(const Problem& p, Candidate start, const Eigen::Vector2d& mu, const SearchConfig& cfg,
                 long& evaluations)
{
    const int n = p.atoms();
    const std::array<std::pair<int, int>, 3> blocks{{{0, 3}, {3, 3 + n}, {3 + n, 3 + 2 * n}}};
    const std::array<double, 3> base{1.0 / (cfg.slot_grid - 1), 1.0 / (cfg.power_grid - 1),
                                     1.0 / (cfg.power_grid - 1)};
    const double tau0 = 0.1;

    // The search climbs a log-sum-exp smoothing of the minimum whose temperature
    // follows the step size; the returned point is the best exact value seen.
    Candidate best = start;
    std::vector<double> x = std::move(start.x);
    std::vector<double> pieces;
    double tau = tau0;
    auto smooth_at = [&](const std::vector<double>& y) {
        ++evaluations;
        weighted_pieces(p.region(y.data()), mu, pieces);
        const double exact = *std::min_element(pieces.begin(), pieces.end());
        if (exact > best.value) best = {y, exact};
        double sum = 0.0;
        for (double f : pieces) sum += std::exp(-(f - exact) / tau);
        return exact - tau * std::log(sum);
    };
    double cur = smooth_at(x);
    auto try_point = [&](std::vector<double>& y) {
        const double v = smooth_at(y);
        if (v > cur) {
            x.swap(y);
            cur = v;
            return true;
        }
        return false;
    };

    double h = 1.0;
    int rounds = 0;
    const int max_sweeps = 40 * (cfg.refine_iters + 1);
    std::vector<double> y(x.size());
    for (int sweep = 0; sweep < max_sweeps && rounds < cfg.refine_iters; ++sweep) {
        bool improved = false;

        // move mass between two coordinates of one simplex block
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            const double step = base[b] * h;
            for (int i = blocks[b].first; i < blocks[b].second; ++i) {
                for (int j = blocks[b].first; j < blocks[b].second; ++j) {
                    const auto si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j);
                    if (i == j || x[si] <= 0.0) continue;
                    y = x;
                    const double delta = std::min(step, y[si]);
                    y[si] = delta < y[si] ? y[si] - delta : 0.0;
                    y[sj] += delta;
                    improved |= try_point(y);
                }
            }
        }

        // Shift time into a slot together with energy into an atom sent in that slot (or
        // out of a slot with energy leaving it). Opening a closed slot needs both at once.
        auto transfer = [](std::vector<double>& v, int from, int to, double step) {
            const auto sf = static_cast<std::size_t>(from), st = static_cast<std::size_t>(to);
            const double delta = std::min(step, v[sf]);
            v[sf] = delta < v[sf] ? v[sf] - delta : 0.0;
            v[st] += delta;
        };
        for (int from = 0; from < 3; ++from) {
            for (int to = 0; to < 3; ++to) {
                if (from == to || x[static_cast<std::size_t>(from)] <= 0.0) continue;
                for (int user = 0; user < 2; ++user) {
                    const int off = blocks[static_cast<std::size_t>(1 + user)].first;
                    for (int i = 0; i < n; ++i) {
                        for (int t = 0; t < n; ++t) {
                            if (i == t || x[static_cast<std::size_t>(off + i)] <= 0.0) continue;
                            if (p.atom_slot(user, t) != to && p.atom_slot(user, i) != from) continue;
                            y = x;
                            transfer(y, from, to, base[0] * h);
                            transfer(y, off + i, off + t, base[1] * h);
                            improved |= try_point(y);
                        }
                    }
                }
            }
        }

        if (!improved) {
            h *= cfg.refine_shrink;
            tau = tau0 * h;
            cur = smooth_at(x);
            ++rounds;
        }
    }
    return best;
}

// Euclidean projection of v onto {w >= 0, sum w = 1}.
void project_simplex(double* v, int n)
{
    std::vector<double> s(v, v + n);
    std::sort(s.begin(), s.end(), std::greater<>());
    double run = 0.0, theta = 0.0;
    for (int i = 0; i < n; ++i) {
        run += s[static_cast<std::size_t>(i)];
        const double t = (run - 1.0) / (i + 1);
        if (s[static_cast<std::size_t>(i)] - t > 0.0) theta = t;
    }
    for (int i = 0; i < n; ++i) v[i] = std::max(0.0, v[i] - theta);
}

// min over the simplex of 0.5 l'Ml - c'l. Supports among the pieces with the
// largest c are tried smallest first and the first KKT point wins; accelerated
// projected gradient is the fallback.
Eigen::VectorXd simplex_qp(const Eigen::MatrixXd& m, const Eigen::VectorXd& c)
{
    const int n = static_cast<int>(c.size());
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return c[i] > c[j]; });
    const int cand = std::min(n, 7);
    const double scale = std::max({1.0, m.cwiseAbs().maxCoeff(), c.cwiseAbs().maxCoeff()});

    std::vector<unsigned> masks;
    for (unsigned mask = 1; mask < (1u << cand); ++mask) masks.push_back(mask);
    std::stable_sort(masks.begin(), masks.end(),
                     [](unsigned x, unsigned y) { return std::popcount(x) < std::popcount(y); });
    for (unsigned mask : masks) {
        std::vector<int> sup;
        for (int k = 0; k < cand; ++k) {
            if (mask & (1u << k)) sup.push_back(order[static_cast<std::size_t>(k)]);
        }
        const long s = static_cast<long>(sup.size());
        Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(s + 1, s + 1);
        Eigen::VectorXd rhs(s + 1);
        for (long i = 0; i < s; ++i) {
            for (long j = 0; j < s; ++j) kkt(i, j) = m(sup[static_cast<std::size_t>(i)], sup[static_cast<std::size_t>(j)]);
            kkt(i, s) = -1.0;
            kkt(s, i) = 1.0;
            rhs[i] = c[sup[static_cast<std::size_t>(i)]];
        }
        rhs[s] = 1.0;
        const Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
        if (!lu.isInvertible()) continue;
        const Eigen::VectorXd sol = lu.solve(rhs);
        if (sol.head(s).minCoeff() < -1e-12) continue;
        Eigen::VectorXd l = Eigen::VectorXd::Zero(n);
        for (long i = 0; i < s; ++i) l[sup[static_cast<std::size_t>(i)]] = std::max(0.0, sol[i]);
        l /= l.sum();
        const Eigen::VectorXd grad = m * l - c;
        if (grad.minCoeff() >= sol[s] - 1e-12 * scale) return l;
    }

    const double lip = std::max(m.diagonal().sum(), 1e-300);
    Eigen::VectorXd l = Eigen::VectorXd::Constant(n, 1.0 / n), z = l;
    double t = 1.0;
    for (int it = 0; it < 2000; ++it) {
        Eigen::VectorXd next = z - (m * z - c) / lip;
        project_simplex(next.data(), n);
        const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        z = next + ((t - 1.0) / tn) * (next - l);
        l = next;
        t = tn;
    }
    return l;
}

// Sparse move direction: coordinate and coefficient pairs summing to zero per block.
using Direction = std::vector<std::pair<int, double>>;

// Tangent directions e_i - e_ref per block, ref being the block's largest entry.
// An almost closed slot is a corner where the objective is only positively
// homogeneous, so moving time alone or energy alone shows no gain; for such a
// slot add directions that open it while moving energy of its owner into an atom
// sent in it, at a few ratios.
std::vector<Direction> polish_directions(const Problem& p, const std::vector<double>& x)
{
    const int n = p.atoms();
    const std::array<std::pair<int, int>, 3> blocks{{{0, 3}, {3, 3 + n}, {3 + n, 3 + 2 * n}}};
    auto at = [&](int i) { return x[static_cast<std::size_t>(i)]; };
    std::vector<Direction> dirs;
    std::array<int, 3> refs{};
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto [lo, hi] = blocks[b];
        int ref = lo;
        for (int i = lo; i < hi; ++i) {
            if (at(i) > at(ref)) ref = i;
        }
        refs[b] = ref;
        for (int i = lo; i < hi; ++i) {
            if (i != ref) dirs.push_back({{i, 1.0}, {ref, -1.0}});
        }
    }
    for (int slot = 0; slot < 3; ++slot) {
        if (at(slot) >= kCornerSlot || slot == refs[0]) continue;
        for (int user = 0; user < 2; ++user) {
            const int off = blocks[static_cast<std::size_t>(1 + user)].first;
            for (int i = 0; i < n; ++i) {
                if (p.atom_slot(user, i) != slot) continue;
                for (int t = 0; t < n; ++t) {
                    if (p.atom_slot(user, t) == slot || at(off + t) <= 0.0) continue;
                    for (double ratio : {0.25, 1.0, 4.0})
                        dirs.push_back({{slot, 1.0}, {refs[0], -1.0}, {off + i, ratio}, {off + t, -ratio}});
                }
            }
        }
    }
    // Coherent beams: (k10 sqrt(E1) + k20 sqrt(E2))^2 grows to first order only
    // when both users feed the beam together.
    for (const auto& [a1, a2] : p.beams()) {
        const int i1 = blocks[1].first + a1, i2 = blocks[2].first + a2;
        if (at(i1) >= kCornerSlot || at(i2) >= kCornerSlot) continue;
        for (double ratio : {0.25, 1.0, 4.0})
            dirs.push_back({{i1, 1.0}, {refs[1], -1.0}, {i2, ratio}, {refs[2], -ratio}});
    }
    return dirs;
}

// Polishes a point where several pieces are active, which the pairwise moves
// cannot follow: linearize every piece by finite differences along the
// directions above, take the step of the regularized max-min model and search
// along its projected path on the exact objective.
Candidate polish(const Problem& p, Candidate c, const Eigen::Vector2d& mu, long& evaluations)
{
    const double fd_step = 1e-7;
    const int n = p.atoms();
    const std::array<std::pair<int, int>, 3> blocks{{{0, 3}, {3, 3 + n}, {3 + n, 3 + 2 * n}}};

    std::vector<double> pieces;
    auto pieces_at = [&](const std::vector<double>& y) {
        ++evaluations;
        weighted_pieces(p.region(y.data()), mu, pieces);
        return Eigen::Map<const Eigen::VectorXd>(pieces.data(), static_cast<long>(pieces.size())).eval();
    };
    auto project = [&](std::vector<double>& y) {
        for (const auto& [lo, hi] : blocks) project_simplex(y.data() + lo, hi - lo);
    };
    auto moved = [](std::vector<double> y, const Direction& d, double t) {
        for (const auto& [i, coef] : d) y[static_cast<std::size_t>(i)] += t * coef;
        return y;
    };
    auto room = [](const std::vector<double>& y, const Direction& d, double t) {
        for (const auto& [i, coef] : d) {
            if (y[static_cast<std::size_t>(i)] + t * coef < 0.0) return false;
        }
        return true;
    };

    std::vector<double> x = c.x;
    Eigen::VectorXd f = pieces_at(x);
    double value = f.minCoeff();
    double weight = 1.0;
    int failures = 0;
    for (int iter = 0; iter < 1000 && failures < 3; ++iter) {
        const std::vector<Direction> dirs = polish_directions(p, x);
        const long cols = static_cast<long>(dirs.size());
        Eigen::MatrixXd g(f.size(), cols);
        for (long k = 0; k < cols; ++k) {
            const Direction& d = dirs[static_cast<std::size_t>(k)];
            const bool ahead = room(x, d, fd_step), back = room(x, d, -fd_step);
            if (ahead && back)
                g.col(k) = (pieces_at(moved(x, d, fd_step)) - pieces_at(moved(x, d, -fd_step))) / (2.0 * fd_step);
            else if (ahead)
                g.col(k) = (pieces_at(moved(x, d, fd_step)) - f) / fd_step;
            else if (back)
                g.col(k) = (f - pieces_at(moved(x, d, -fd_step))) / fd_step;
            else
                g.col(k).setZero();
        }

        // drop directions that would push a near-zero coordinate negative
        const Eigen::VectorXd offset = f.array() - value;
        Eigen::VectorXd d;
        std::vector<bool> frozen(dirs.size(), false);
        for (std::size_t pass = 0; pass <= dirs.size(); ++pass) {
            Eigen::MatrixXd gf = g;
            for (long k = 0; k < cols; ++k) {
                if (frozen[static_cast<std::size_t>(k)]) gf.col(k).setZero();
            }
            const Eigen::VectorXd lambda = simplex_qp(gf * gf.transpose() / weight, -offset);
            d = gf.transpose() * lambda / weight;
            bool changed = false;
            for (long k = 0; k < cols; ++k) {
                if (frozen[static_cast<std::size_t>(k)]) continue;
                for (const auto& [i, coef] : dirs[static_cast<std::size_t>(k)]) {
                    const double step = coef * d[k];
                    if (step < 0.0 && x[static_cast<std::size_t>(i)] < -1e-3 * step) {
                        frozen[static_cast<std::size_t>(k)] = changed = true;
                        break;
                    }
                }
            }
            if (!changed) break;
        }

        bool accepted = false;
        double t = 1.0;
        for (int halving = 0; halving < 40; ++halving, t *= 0.5) {
            std::vector<double> y = x;
            for (long k = 0; k < cols; ++k) y = moved(std::move(y), dirs[static_cast<std::size_t>(k)], t * d[k]);
            project(y);
            const Eigen::VectorXd fy = pieces_at(y);
            if (fy.minCoeff() > value) {
                x.swap(y);
                f = fy;
                value = fy.minCoeff();
                accepted = true;
                weight = halving == 0 ? weight * 0.5 : weight * std::pow(2.0, halving - 1);
                break;
            }
        }
        if (accepted) {
            failures = 0;
        } else {
            ++failures;
            weight *= 16.0;
        }
    }
    if (value > c.value) c = {x, value};
    return c;
}

OptResult make_result(const Problem& p, const Candidate& c, const Eigen::Vector2d& mu, long evaluations)
{
    OptResult r;
    r.scheme = p.scheme();
    r.mu = mu;
    r.slots = p.slots_of(c.x.data());
    r.allocation = p.allocation_of(c.x.data());
    r.vertex = best_corner(p.minima(c.x.data()), mu);
    r.objective = mu.dot(r.vertex);
    r.evaluations = evaluations;
    return r;
}

void check_request(const ChannelGains& g, const PowerBudget& budget, const SearchConfig& cfg,
                   const SchemeOptions& opts, Scheme scheme)
{
    g.validate();
    budget.validate();
    cfg.validate();
    if (scheme == Scheme::DegradedOuter) opts.rho.validate();
}

void check_mu(const Eigen::Vector2d& mu)
{
    if (!(mu.x() >= 0.0 && mu.y() >= 0.0) || (mu.x() == 0.0 && mu.y() == 0.0))
        throw ValidationError("weights must be >= 0 and not both 0");
}

// Refinement and polish alternate until neither improves the point.
Candidate local_search(const Problem& p, Candidate c, const Eigen::Vector2d& mu, const SearchConfig& cfg,
                       long& evaluations)
{
    for (int round = 0; round < kLocalRounds; ++round) {
        const double before = c.value;
        c = polish(p, refine(p, std::move(c), mu, cfg, evaluations), mu, evaluations);
        if (!(c.value > before + 1e-12)) break;
    }
    return c;
}

// On an axis every point with the largest rate of one user ties; a slight weight
// on the other user picks the corner that is also best for that user.
Eigen::Vector2d tilted(const Eigen::Vector2d& mu)
{
    const double t = kTieTilt * mu.maxCoeff();
    return {mu.x() == 0.0 ? t : mu.x(), mu.y() == 0.0 ? t : mu.y()};
}

std::vector<OptResult> solve(const Problem& p, const std::vector<Eigen::Vector2d>& dirs, const SearchConfig& cfg)
{
    std::vector<Eigen::Vector2d> search;
    for (const auto& mu : dirs) search.push_back(tilted(mu));
    long grid_evals = 0;
    const std::vector<Candidate> seeds = grid_scan(p, search, cfg, grid_evals);
    std::vector<OptResult> out;
    for (std::size_t k = 0; k < dirs.size(); ++k) {
        long evals = grid_evals;
        Candidate best = local_search(p, seeds[k], search[k], cfg, evals);
        out.push_back(make_result(p, best, dirs[k], evals));
    }
    return out;
}

}  // namespace

Allocation allocation_from_shares(Scheme scheme, const PowerBudget& budget, const TimeSlots& slots,
                                  std::span<const double> user1, std::span<const double> user2)
{
    const std::size_t n = is_pdf(scheme) ? 5 : 3;
    if (user1.size() != n || user2.size() != n)
        throw ValidationError("allocation_from_shares: wrong number of shares for " + scheme_name(scheme));
    auto power = [](double share, double p, double slot) { return slot > 0.0 ? share * p / slot : 0.0; };
    const double p1 = budget.p1, p2 = budget.p2;
    const double a1 = slots.a1, a2 = slots.a2, a3 = slots.a3;
    if (!is_pdf(scheme)) {
        return DfAllocation{power(user1[0], p1, a1), power(user2[0], p2, a2), power(user1[1], p1, a3),
                            power(user2[1], p2, a3), power(user1[2], p1, a3), power(user2[2], p2, a3)};
    }
    PdfAllocation a;
    a.p10 = power(user1[0], p1, a1);
    a.pu = power(user1[1], p1, a1);
    a.p13 = power(user1[2], p1, a3);
    a.p20 = power(user2[0], p2, a2);
    a.pv = power(user2[1], p2, a2);
    a.p23 = power(user2[2], p2, a3);
    // no cooperative power, no weight
    auto weight = [](double relay_power, double base) { return base > 0.0 ? relay_power / base : 0.0; };
    a.c2 = weight(power(user1[3], p1, a3), a.pu);
    a.c3 = weight(power(user1[4], p1, a3), a.pv);
    a.d2 = weight(power(user2[3], p2, a3), a.pv);
    a.d3 = weight(power(user2[4], p2, a3), a.pu);
    return a;
}

void SearchConfig::validate() const
{
    if (slot_grid < 2 || power_grid < 2) throw ValidationError("SearchConfig: grids must be >= 2");
    if (refine_iters < 0) throw ValidationError("SearchConfig: refine_iters must be >= 0");
    if (!(refine_shrink > 0.0 && refine_shrink < 1.0))
        throw ValidationError("SearchConfig: refine_shrink must lie in (0, 1)");
}

std::string scheme_name(Scheme s)
{
    switch (s) {
    case Scheme::PdfJoint: return "pdf_joint";
    case Scheme::PdfSeparate: return "pdf_separate";
    case Scheme::PdfPartial: return "pdf_partial";
    case Scheme::Df: return "df";
    case Scheme::Outer: return "outer";
    case Scheme::DegradedOuter: return "degraded_outer";
    }
    return "unknown";
}

Scheme scheme_from_name(const std::string& name)
{
    for (Scheme s : {Scheme::PdfJoint, Scheme::PdfSeparate, Scheme::PdfPartial, Scheme::Df, Scheme::Outer,
                     Scheme::DegradedOuter}) {
        if (scheme_name(s) == name) return s;
    }
    throw ValidationError("unknown scheme '" + name + "'");
}

bool is_pdf(Scheme s)
{
    return s == Scheme::PdfJoint || s == Scheme::PdfSeparate || s == Scheme::PdfPartial;
}

LinearRegion scheme_region(Scheme scheme, const ChannelGains& g, const TimeSlots& slots, const Allocation& a,
                           const SchemeOptions& opts)
{
    if (is_pdf(scheme) != std::holds_alternative<PdfAllocation>(a))
        throw ValidationError("allocation type does not match scheme " + scheme_name(scheme));
    switch (scheme) {
    case Scheme::PdfJoint: return pdf_joint_region(g, slots, std::get<PdfAllocation>(a));
    case Scheme::PdfSeparate: return pdf_separate_region(g, slots, std::get<PdfAllocation>(a), opts.separate);
    case Scheme::PdfPartial: return pdf_partial_user_region(g, slots, std::get<PdfAllocation>(a));
    case Scheme::Df: return df_region(g, slots, std::get<DfAllocation>(a));
    case Scheme::Outer: return gaussian_outer_region(g, slots, std::get<DfAllocation>(a));
    case Scheme::DegradedOuter: return degraded_outer_region(g, slots, std::get<DfAllocation>(a), opts.rho);
    }
    throw ValidationError("unknown scheme");
}

Eigen::Vector2d frontier_direction(int k, int weight_count)
{
    if (k == 0) return {1.0, 0.0};
    if (k == weight_count - 1) return {0.0, 1.0};
    const double t = 0.5 * std::numbers::pi * k / (weight_count - 1);
    return {std::cos(t), std::sin(t)};
}

OptResult optimize_scheme(const ChannelGains& g, const PowerBudget& budget, Scheme scheme,
                          const Eigen::Vector2d& mu, const SearchConfig& cfg, const SchemeOptions& opts)
{
    check_request(g, budget, cfg, opts, scheme);
    check_mu(mu);
    return solve(Problem(g, budget, scheme, opts), {mu}, cfg).front();
}

Frontier frontier(const ChannelGains& g, const PowerBudget& budget, Scheme scheme, int weight_count,
                  const SearchConfig& cfg, const SchemeOptions& opts)
{
    check_request(g, budget, cfg, opts, scheme);
    if (weight_count < 3) throw ValidationError("frontier: weight_count must be >= 3");

    std::vector<Eigen::Vector2d> dirs;
    for (int k = 0; k < weight_count; ++k) dirs.push_back(frontier_direction(k, weight_count));

    Frontier f;
    f.points = solve(Problem(g, budget, scheme, opts), dirs, cfg);
    std::vector<Rate> pts;
    for (const auto& r : f.points) pts.push_back(r.vertex);
    f.hull = upper_hull(pts);
    return f;
}

}  // namespace hdmac
