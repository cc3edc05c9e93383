#ifndef WIGNER_FINITE_G_HPP
#define WIGNER_FINITE_G_HPP

// Finite-interaction pipeline (d = 1).
//
// Trial state: chi(x) = prod_k exp(-x_k^2/2) prod_{i>j} f(alpha (x_i - x_j)/sqrt(2)).
// alpha minimizes the energy; the one-particle RDM is tabulated on a uniform
// grid, B_ij = dy rho(m_i, m_j), and diagonalized (Nystrom).
//
// Everything is evaluated inside the box [-c, c]^N of the Nystrom grid. The
// Rayleigh-Ritz factor is a polynomial that stops tracking the true relative
// wavefunction a few oscillator lengths out, and its growth there would
// otherwise leak into the energy.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wigner/classical_crystal.hpp"
#include "wigner/errors.hpp"
#include "wigner/quadrature.hpp"
#include "wigner/two_body.hpp"

namespace wigner {

/// Uniform Nystrom grid m_i = -c + dy i, i = 0..K-1, dy = 2c/(K-1).
struct NystromGrid {
    double c = 5.0;
    int k = 41;

    double dy() const { return 2.0 * c / (k - 1); }
    double node(int i) const { return -c + dy() * i; }

    void validate() const
    {
        if (!(c > 0.0))
            throw InvalidArgument("NystromGrid: half-extent c must be > 0");
        if (k < 3)
            throw InvalidArgument("NystromGrid: need K >= 3 points");
    }

    /// Smallest symmetric grid with spacing exactly `dy` covering [-c_min, c_min].
    static NystromGrid with_spacing(double c_min, double dy)
    {
        if (!(dy > 0.0) || !(c_min > 0.0))
            throw InvalidArgument("NystromGrid: spacing and extent must be > 0");
        const int half = static_cast<int>(std::ceil(c_min / dy - 1e-9));
        return {dy * half, 2 * half + 1};
    }
};

class JastrowAnsatz {
public:
    JastrowAnsatz(int n, double alpha, CorrelationFactor f) : n_(n), alpha_(alpha), f_(std::move(f))
    {
        if (n < 2)
            throw InvalidArgument("JastrowAnsatz: N must be >= 2");
        if (!(alpha > 0.0))
            throw InvalidArgument("JastrowAnsatz: alpha must be > 0");
    }

    int n() const { return n_; }
    double alpha() const { return alpha_; }
    const CorrelationFactor& factor() const { return f_; }

    double pair_argument(double xi, double xj) const { return alpha_ * (xi - xj) / std::numbers::sqrt2; }

    double value(std::span<const double> x) const
    {
        double sq = 0.0;
        for (double v : x)
            sq += v * v;
        double prod = std::exp(-0.5 * sq);
        for (int i = 1; i < n_; ++i)
            for (int j = 0; j < i; ++j)
                prod *= f_(pair_argument(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(j)]));
        return prod;
    }

    /// chi(x) and its gradient (grad.size() == N); exact also on the nodes.
    double value_gradient(std::span<const double> x, std::span<double> grad) const
    {
        const int pairs = n_ * (n_ - 1) / 2;
        thread_local std::vector<double> fv, dfv, prefix, suffix;
        fv.resize(static_cast<std::size_t>(pairs));
        dfv.resize(static_cast<std::size_t>(pairs));
        prefix.resize(static_cast<std::size_t>(pairs) + 1);
        suffix.resize(static_cast<std::size_t>(pairs) + 1);

        double sq = 0.0;
        for (double v : x)
            sq += v * v;
        const double gauss = std::exp(-0.5 * sq);

        int p = 0;
        for (int i = 1; i < n_; ++i)
            for (int j = 0; j < i; ++j, ++p)
                f_.evaluate(pair_argument(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(j)]),
                            fv[static_cast<std::size_t>(p)], dfv[static_cast<std::size_t>(p)]);
        prefix[0] = 1.0;
        for (int q = 0; q < pairs; ++q)
            prefix[static_cast<std::size_t>(q) + 1] = prefix[static_cast<std::size_t>(q)] * fv[static_cast<std::size_t>(q)];
        suffix[static_cast<std::size_t>(pairs)] = 1.0;
        for (int q = pairs; q-- > 0;)
            suffix[static_cast<std::size_t>(q)] = suffix[static_cast<std::size_t>(q) + 1] * fv[static_cast<std::size_t>(q)];

        const double chi = gauss * prefix[static_cast<std::size_t>(pairs)];
        for (int k = 0; k < n_; ++k)
            grad[static_cast<std::size_t>(k)] = -x[static_cast<std::size_t>(k)] * chi;
        const double scale = alpha_ / std::numbers::sqrt2;
        p = 0;
        for (int i = 1; i < n_; ++i) {
            for (int j = 0; j < i; ++j, ++p) {
                const auto ps = static_cast<std::size_t>(p);
                const double d = gauss * scale * dfv[ps] * prefix[ps] * suffix[ps + 1];
                grad[static_cast<std::size_t>(i)] += d;
                grad[static_cast<std::size_t>(j)] -= d;
            }
        }
        return chi;
    }

private:
    int n_;
    double alpha_;
    CorrelationFactor f_;
};

/// V^g for d = 1 weighted by chi^2; the 1/|r| singularity is cancelled by the node.
inline double weighted_potential(std::span<const double> x, double chi, double g)
{
    const double chi2 = chi * chi;
    double v = 0.0;
    for (double xi : x)
        v += 0.5 * xi * xi;
    double out = v * chi2;
    if (g != 0.0 && chi2 != 0.0) {
        for (std::size_t i = 1; i < x.size(); ++i)
            for (std::size_t j = 0; j < i; ++j) {
                const double r = std::abs(x[i] - x[j]);
                if (r > 0.0)
                    out += g * chi2 / r;
            }
    }
    return out;
}

enum class Integrator { quadrature, monte_carlo };

inline const char* to_string(Integrator i)
{
    return i == Integrator::quadrature ? "quadrature" : "monte-carlo";
}

struct QuadratureSettings {
    int order = 16;          // Gauss-Legendre points per ordered-sector piece
    double energy_tol = 1e-5;
    int max_order = 96;
    int rdm_order = 8;       // per Nystrom cell
};

struct MonteCarloSettings {
    std::uint64_t seed = 20160425;
    long long samples = 10'000'000;       // Metropolis moves for the RDM
    long long thermalization = 100'000;   // moves before any measurement
    long long optimization_samples = 1'000'000; // stored configurations per alpha round
    int optimization_rounds = 2;
    int batches = 50;
};

// ---------------------------------------------------------------------------
// energy functional

struct EnergyValue {
    double energy = 0.0;
    double norm = 0.0; // integral of chi^2 over the box
};

/// E(alpha) = int (|grad chi|^2/2 + V chi^2) / int chi^2 over [-box, box]^N.
///
/// chi^2 and |grad chi|^2 are permutation symmetric, so the integral is N!
/// times the ordered sector x_1 < ... < x_N, where the integrand is smooth.
inline EnergyValue quadrature_energy(const JastrowAnsatz& psi, double g, double box, int order)
{
    const QuadratureRule rule = gauss_legendre(order);
    const int n = psi.n();
    std::vector<double> grad(static_cast<std::size_t>(n));
    const auto acc = integrate_ordered<std::array<double, 2>>(
        n, -box, box, {}, rule, [&](std::span<const double> x) {
            const double chi = psi.value_gradient(x, grad);
            double g2 = 0.0;
            for (double v : grad)
                g2 += v * v;
            return std::array<double, 2>{0.5 * g2 + weighted_potential(x, chi, g), chi * chi};
        });
    double fact = 1.0;
    for (int i = 2; i <= n; ++i)
        fact *= i;
    return {acc[0] / acc[1], fact * acc[1]};
}

struct AlphaOptimum {
    double alpha = 1.0;
    double energy = 0.0;
    bool at_boundary = false;
    int quadrature_order = 0;
    std::vector<std::string> warnings;
};

// ---------------------------------------------------------------------------
// Metropolis sampling of chi^2 restricted to the box

class MetropolisSampler {
public:
    MetropolisSampler(const JastrowAnsatz& psi, double box, std::uint64_t seed, std::vector<double> start)
        : psi_(psi), box_(box), rng_(seed), x_(std::move(start))
    {
        for (double& v : x_)
            v = std::clamp(v, -box_, box_);
    }

    /// One single-particle move; returns true when accepted.
    bool move()
    {
        const std::size_t k = pick_(rng_) % x_.size();
        const double old = x_[k];
        const double trial = old + step_ * normal_(rng_);
        ++attempts_;
        if (std::abs(trial) > box_)
            return false;
        double ratio = std::exp(-(trial * trial - old * old));
        for (std::size_t l = 0; l < x_.size(); ++l) {
            if (l == k)
                continue;
            const double fo = psi_.factor()(psi_.pair_argument(old, x_[l]));
            const double fn = psi_.factor()(psi_.pair_argument(trial, x_[l]));
            ratio *= fo > 0.0 ? (fn / fo) * (fn / fo) : 1.0;
        }
        if (ratio >= 1.0 || uniform_(rng_) < ratio) {
            x_[k] = trial;
            ++accepted_;
            return true;
        }
        return false;
    }

    void sweep()
    {
        for (std::size_t i = 0; i < x_.size(); ++i)
            move();
    }

    /// Burn-in with the step adapted toward 50% acceptance every 1000 moves.
    void thermalize(long long moves)
    {
        long long window_acc = 0;
        for (long long m = 1; m <= moves; ++m) {
            window_acc += move() ? 1 : 0;
            if (m % 1000 == 0) {
                const double rate = window_acc / 1000.0;
                step_ *= std::clamp(rate / 0.5, 0.5, 2.0);
                step_ = std::clamp(step_, 1e-3, box_);
                window_acc = 0;
            }
        }
        attempts_ = accepted_ = 0;
    }

    std::span<const double> position() const { return x_; }
    double step() const { return step_; }
    double acceptance() const { return attempts_ ? double(accepted_) / double(attempts_) : 0.0; }

private:
    const JastrowAnsatz& psi_;
    double box_;
    std::mt19937_64 rng_;
    std::vector<double> x_;
    std::uniform_int_distribution<std::size_t> pick_{0, std::numeric_limits<std::size_t>::max()};
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
    double step_ = 0.5;
    long long attempts_ = 0;
    long long accepted_ = 0;
};

namespace detail {

inline std::vector<double> starting_configuration(int n, double g)
{
    std::vector<double> x(static_cast<std::size_t>(n));
    if (g > 0.0) {
        const EquilibriumConfig eq = solve_equilibrium(SystemSpec{n, 1.0, std::nullopt});
        x = scale_positions(eq, 1.0, g);
    } else {
        for (int i = 0; i < n; ++i)
            x[static_cast<std::size_t>(i)] = i - 0.5 * (n - 1);
    }
    return x;
}

// local energy |grad log chi|^2 / 2 + V and log chi for one configuration
inline void local_energy(const JastrowAnsatz& psi, std::span<const double> x, double g, double& e_loc,
                         double& log_pairs)
{
    const int n = psi.n();
    thread_local std::vector<double> drift;
    drift.assign(static_cast<std::size_t>(n), 0.0);
    double v = 0.0;
    log_pairs = 0.0;
    for (int k = 0; k < n; ++k) {
        drift[static_cast<std::size_t>(k)] = -x[static_cast<std::size_t>(k)];
        v += 0.5 * x[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(k)];
    }
    const double scale = psi.alpha() / std::numbers::sqrt2;
    for (int i = 1; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            const double xi = x[static_cast<std::size_t>(i)];
            const double xj = x[static_cast<std::size_t>(j)];
            double f = 0.0, df = 0.0;
            psi.factor().evaluate(psi.pair_argument(xi, xj), f, df);
            log_pairs += std::log(f);
            const double d = scale * df / f;
            drift[static_cast<std::size_t>(i)] += d;
            drift[static_cast<std::size_t>(j)] -= d;
            v += g / std::abs(xi - xj);
        }
    }
    double kin = 0.0;
    for (double dv : drift)
        kin += dv * dv;
    e_loc = 0.5 * kin + v;
}

inline std::vector<double> sample_configurations(const JastrowAnsatz& psi, double g, double box,
                                                 std::uint64_t seed, long long thermalization, long long count)
{
    MetropolisSampler walker(psi, box, seed, starting_configuration(psi.n(), g));
    walker.thermalize(thermalization);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count * psi.n()));
    for (long long s = 0; s < count; ++s) {
        walker.sweep();
        const auto x = walker.position();
        out.insert(out.end(), x.begin(), x.end());
    }
    return out;
}

/// Correlated-sampling energy: configurations drawn from chi_ref^2, reweighted to alpha.
class ReweightedEnergy {
public:
    ReweightedEnergy(const CorrelationFactor& f, int n, double g, double alpha_ref, std::vector<double> configs)
        : f_(f), n_(n), g_(g), configs_(std::move(configs))
    {
        const JastrowAnsatz ref(n, alpha_ref, f);
        const std::size_t count = configs_.size() / static_cast<std::size_t>(n);
        log_ref_.resize(count);
        for (std::size_t s = 0; s < count; ++s) {
            double e = 0.0;
            local_energy(ref, sample(s), g, e, log_ref_[s]);
        }
    }

    double operator()(double alpha) const
    {
        const JastrowAnsatz psi(n_, alpha, f_);
        const std::size_t count = log_ref_.size();
        std::vector<double> logw(count), eloc(count);
        double maxlog = -std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s < count; ++s) {
            double lp = 0.0;
            local_energy(psi, sample(s), g_, eloc[s], lp);
            logw[s] = 2.0 * (lp - log_ref_[s]);
            maxlog = std::max(maxlog, logw[s]);
        }
        double num = 0.0, den = 0.0;
        for (std::size_t s = 0; s < count; ++s) {
            const double w = std::exp(logw[s] - maxlog);
            num += w * eloc[s];
            den += w;
        }
        return num / den;
    }

private:
    std::span<const double> sample(std::size_t s) const
    {
        return std::span<const double>(configs_).subspan(s * static_cast<std::size_t>(n_),
                                                         static_cast<std::size_t>(n_));
    }

    const CorrelationFactor& f_;
    int n_;
    double g_;
    std::vector<double> configs_;
    std::vector<double> log_ref_;
};

} // namespace detail

/// Variational alpha by golden-section search on [lo, hi].
///
/// Quadrature mode (N <= 3) refines the Gauss-Legendre order by 1.5x until
/// E changes by less than `energy_tol`, then searches at that order.
/// Monte Carlo mode searches a reweighted energy over a fixed sample set and
/// resamples around the new optimum for `optimization_rounds` rounds.
inline AlphaOptimum optimize_alpha(int n, double g, const CorrelationFactor& f, const NystromGrid& grid,
                                   Integrator integrator, double lo = 0.5, double hi = 1.2,
                                   const QuadratureSettings& qs = {}, const MonteCarloSettings& mc = {})
{
    if (!(lo > 0.0) || !(hi > lo))
        throw InvalidArgument("optimize_alpha: bad search interval");
    const double tol = 1e-4;
    AlphaOptimum out;
    if (integrator == Integrator::quadrature) {
        if (n > 3)
            throw Unsupported("optimize_alpha: quadrature mode supports N <= 3");
        const double mid = 0.5 * (lo + hi);
        int order = qs.order;
        double e_prev = quadrature_energy(JastrowAnsatz(n, mid, f), g, grid.c, order).energy;
        while (true) {
            const int next = static_cast<int>(std::ceil(order * 1.5));
            if (next > qs.max_order) {
                out.warnings.push_back("energy quadrature not stable to tolerance at max order");
                break;
            }
            const double e = quadrature_energy(JastrowAnsatz(n, mid, f), g, grid.c, next).energy;
            order = next;
            if (std::abs(e - e_prev) <= qs.energy_tol)
                break;
            e_prev = e;
        }
        out.quadrature_order = order;
        const GoldenResult r = golden_section(
            [&](double a) { return quadrature_energy(JastrowAnsatz(n, a, f), g, grid.c, order).energy; }, lo, hi,
            tol);
        out.alpha = r.x;
        out.energy = r.value;
    } else {
        double ref = 0.5 * (lo + hi);
        GoldenResult r{ref, 0.0, 0};
        for (int round = 0; round < std::max(1, mc.optimization_rounds); ++round) {
            const JastrowAnsatz psi(n, ref, f);
            const detail::ReweightedEnergy energy(
                f, n, g, ref,
                detail::sample_configurations(psi, g, grid.c,
                                              mc.seed + 7919ULL * static_cast<std::uint64_t>(round + 1),
                                              mc.thermalization, mc.optimization_samples));
            r = golden_section(energy, lo, hi, tol);
            ref = r.x;
        }
        out.alpha = r.x;
        out.energy = r.value;
    }
    if (out.alpha - lo < 2.0 * tol || hi - out.alpha < 2.0 * tol) {
        out.at_boundary = true;
        out.warnings.push_back("optimal alpha at search-interval boundary; widen the interval");
    }
    return out;
}

// ---------------------------------------------------------------------------
// RDM matrix

struct RDMatrix {
    Eigen::MatrixXd B;            // trace-normalized
    double trace_raw = 0.0;       // sum of approximate occupancies before normalization
    double trace_raw_error = 0.0; // Monte Carlo standard error (0 for quadrature)
    double asymmetry = 0.0;       // max |B - B^T| before symmetrization (Monte Carlo)
};

/// Tabulates an arbitrary symmetric kernel on the grid.
inline RDMatrix rdm_from_kernel(const std::function<double(double, double)>& rho, const NystromGrid& grid)
{
    grid.validate();
    RDMatrix out;
    out.B.resize(grid.k, grid.k);
    const double dy = grid.dy();
    for (int i = 0; i < grid.k; ++i)
        for (int j = 0; j <= i; ++j)
            out.B(i, j) = out.B(j, i) = dy * rho(grid.node(i), grid.node(j));
    out.trace_raw = out.B.trace();
    out.B /= out.trace_raw;
    return out;
}

/// rho(x, y) = int chi(x, t) chi(y, t) dt / int chi^2 over the ordered sector
/// of the N-1 dummy coordinates (times (N-1)!).
///
/// One fixed node set serves every matrix entry: each nested interval is cut
/// at all grid nodes, so the kinks at t = x and t = y fall on cell edges, and
/// B = Phi Phi^T with Phi_it = sqrt(w_t) chi(m_i, t) is positive semidefinite
/// by construction. `order` is the Gauss-Legendre order per cell.
/// `dummy_order` permutes which argument slot each sector coordinate fills;
/// any permutation gives the same matrix.
inline RDMatrix rdm_matrix_quadrature(const JastrowAnsatz& psi, const NystromGrid& grid, double norm, int order,
                                      std::span<const int> dummy_order = {})
{
    grid.validate();
    const int n = psi.n();
    if (n > 3)
        throw Unsupported("rdm_matrix: quadrature mode supports N <= 3");
    std::vector<int> slot(static_cast<std::size_t>(n - 1));
    std::iota(slot.begin(), slot.end(), 0);
    if (!dummy_order.empty()) {
        std::vector<int> sorted(dummy_order.begin(), dummy_order.end());
        std::sort(sorted.begin(), sorted.end());
        if (sorted != slot)
            throw InvalidArgument("rdm_matrix: dummy_order must permute N-1 slots");
        slot.assign(dummy_order.begin(), dummy_order.end());
    }
    std::vector<double> nodes(static_cast<std::size_t>(grid.k));
    for (int i = 0; i < grid.k; ++i)
        nodes[static_cast<std::size_t>(i)] = grid.node(i);
    const OrderedRule rule = ordered_rule(n - 1, -grid.c, grid.c, nodes, gauss_legendre(order));
    double fact = 1.0;
    for (int i = 2; i < n; ++i)
        fact *= i;

    const Eigen::Index kk = grid.k;
    const std::size_t block = 4096;
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(kk, kk);
    Eigen::MatrixXd phi(kk, static_cast<Eigen::Index>(block));
    std::vector<double> px(static_cast<std::size_t>(n));
    for (std::size_t start = 0; start < rule.size(); start += block) {
        const std::size_t len = std::min(block, rule.size() - start);
        for (std::size_t q = 0; q < len; ++q) {
            const auto t = rule.point(start + q);
            for (std::size_t s = 0; s < t.size(); ++s)
                px[1 + static_cast<std::size_t>(slot[s])] = t[s];
            const double sw = std::sqrt(rule.weights[start + q]);
            for (Eigen::Index i = 0; i < kk; ++i) {
                px[0] = nodes[static_cast<std::size_t>(i)];
                phi(i, static_cast<Eigen::Index>(q)) = sw * psi.value(px);
            }
        }
        const auto cols = phi.leftCols(static_cast<Eigen::Index>(len));
        acc.selfadjointView<Eigen::Lower>().rankUpdate(cols);
    }
    RDMatrix out;
    out.B = acc.selfadjointView<Eigen::Lower>();
    out.B *= grid.dy() * fact / norm;
    out.trace_raw = out.B.trace();
    out.B /= out.trace_raw;
    return out;
}

/// Swap estimator of the RDM from Metropolis samples of chi^2.
///
/// For particle k in bin i (width dy around m_i) the sample contributes
/// chi(m_j, rest) / chi(x_k, rest) to B_ij; in expectation this is
/// int_bin rho(x, m_j) dx ~ dy rho(m_i, m_j). All N particles are used per
/// sweep, one sweep per N moves. B is symmetrized before normalization.
inline RDMatrix rdm_matrix_monte_carlo(const JastrowAnsatz& psi, double g, const NystromGrid& grid,
                                       const MonteCarloSettings& mc)
{
    grid.validate();
    const int n = psi.n();
    const int kk = grid.k;
    const double dy = grid.dy();
    MetropolisSampler walker(psi, grid.c, mc.seed, detail::starting_configuration(n, g));
    walker.thermalize(mc.thermalization);

    const long long sweeps = std::max<long long>(1, mc.samples / n);
    const int batches = std::max(2, mc.batches);
    const long long per_batch = std::max<long long>(1, sweeps / batches);

    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(kk, kk);
    std::vector<double> batch_trace(static_cast<std::size_t>(batches), 0.0);
    std::vector<double> nodes(static_cast<std::size_t>(kk));
    std::vector<double> numer(static_cast<std::size_t>(kk));
    for (int j = 0; j < kk; ++j)
        nodes[static_cast<std::size_t>(j)] = grid.node(j);

    long long measured = 0;
    for (long long s = 0; s < per_batch * batches; ++s) {
        walker.sweep();
        const auto x = walker.position();
        const auto b = static_cast<std::size_t>(s / per_batch);
        for (int k = 0; k < n; ++k) {
            const double xk = x[static_cast<std::size_t>(k)];
            const int bin = static_cast<int>(std::lround((xk + grid.c) / dy));
            if (bin < 0 || bin >= kk)
                continue;
            double denom = 1.0;
            for (int l = 0; l < n; ++l)
                if (l != k)
                    denom *= psi.factor()(psi.pair_argument(xk, x[static_cast<std::size_t>(l)]));
            if (denom == 0.0)
                continue;
            for (int j = 0; j < kk; ++j) {
                const double mj = nodes[static_cast<std::size_t>(j)];
                double num = std::exp(-0.5 * (mj * mj - xk * xk));
                for (int l = 0; l < n; ++l)
                    if (l != k)
                        num *= psi.factor()(psi.pair_argument(mj, x[static_cast<std::size_t>(l)]));
                numer[static_cast<std::size_t>(j)] = num / denom;
            }
            for (int j = 0; j < kk; ++j)
                acc(bin, j) += numer[static_cast<std::size_t>(j)];
            batch_trace[b] += numer[static_cast<std::size_t>(bin)];
        }
        ++measured;
    }

    const double samples = static_cast<double>(measured) * n;
    RDMatrix out;
    const Eigen::MatrixXd raw = acc / samples;
    out.asymmetry = (raw - raw.transpose()).cwiseAbs().maxCoeff();
    out.B = 0.5 * (raw + raw.transpose());
    out.trace_raw = out.B.trace();

    double mean = 0.0;
    for (double& t : batch_trace) {
        t /= static_cast<double>(per_batch) * n;
        mean += t;
    }
    mean /= batches;
    double var = 0.0;
    for (double t : batch_trace)
        var += (t - mean) * (t - mean);
    var /= (batches - 1);
    out.trace_raw_error = std::sqrt(var / batches);

    if (!(out.trace_raw > 0.0) || out.trace_raw_error / out.trace_raw > 0.01)
        throw PrecisionError("rdm_matrix: Monte Carlo trace relative error above 1%; increase --samples");
    out.B /= out.trace_raw;
    return out;
}

struct Occupancies {
    std::vector<double> lambda;     // descending
    Eigen::MatrixXd orbitals;       // column s samples v_s at the grid nodes, sum v^2 dy = 1
    double trace_raw = 0.0;
    double min_eigenvalue = 0.0;
    std::vector<std::string> warnings;
};

inline Occupancies diagonalize_rdm(const RDMatrix& m, double dy)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.B);
    if (es.info() != Eigen::Success)
        throw ConvergenceError("diagonalize_rdm: eigensolver failed", {});
    const Eigen::Index k = m.B.rows();
    Occupancies out;
    out.trace_raw = m.trace_raw;
    out.lambda.resize(static_cast<std::size_t>(k));
    out.orbitals.resize(k, k);
    for (Eigen::Index s = 0; s < k; ++s) {
        out.lambda[static_cast<std::size_t>(s)] = es.eigenvalues()[k - 1 - s];
        out.orbitals.col(s) = es.eigenvectors().col(k - 1 - s) / std::sqrt(dy);
    }
    out.min_eigenvalue = out.lambda.back();
    if (out.min_eigenvalue < -1e-8)
        out.warnings.push_back("negative Nystrom eigenvalue " + std::to_string(out.min_eigenvalue) +
                               " (discretization or sampling error); excluded from entropies");
    return out;
}

struct FiniteReport {
    double linear_entropy = 0.0; // 1 - sum lambda^2
    double vn_entropy = 0.0;     // bits
};

/// L = 1 - sum lambda^2 and S = -sum lambda log2 lambda over lambda >= 1e-12.
inline FiniteReport finite_report(std::span<const double> occupancies)
{
    FiniteReport r;
    double purity = 0.0;
    for (double l : occupancies) {
        if (l < 1e-12)
            continue;
        purity += l * l;
        r.vn_entropy -= l * std::log2(l);
    }
    r.linear_entropy = 1.0 - purity;
    return r;
}

// ---------------------------------------------------------------------------
// whole pipeline

struct FiniteGConfig {
    int n = 3;
    double g = 1.0;              // 0 selects the Tonks-Girardeau factor f = |x|
    double d = 1.0;
    std::optional<int> magic_n;  // overrides g with the magic strength and uses its series
    int basis_size = 10;
    std::optional<double> grid_c;
    std::optional<int> grid_k;
    double dy = 0.25;
    std::optional<Integrator> integrator; // default: quadrature for N <= 3
    std::optional<double> alpha;          // fixed alpha skips the optimization
    double alpha_lo = 0.5;
    double alpha_hi = 1.2;
    QuadratureSettings quadrature;
    MonteCarloSettings monte_carlo;
};

struct FiniteGResult {
    FiniteGConfig config; // with g and integrator resolved
    NystromGrid grid;
    std::string factor;
    double relative_energy = 0.0; // E_rel of the two-body solution behind f
    AlphaOptimum optimum;
    RDMatrix rdm;
    Occupancies occupancies;
    FiniteReport report;
    std::vector<std::string> warnings;
};

/// Default grid: c = (largest classical position at g) + 4 with spacing dy.
inline NystromGrid resolve_grid(const FiniteGConfig& cfg)
{
    double c0 = 4.0;
    if (cfg.g > 0.0) {
        const std::vector<double> x = detail::starting_configuration(cfg.n, cfg.g);
        c0 += x.back();
    }
    NystromGrid grid;
    if (cfg.grid_c && cfg.grid_k)
        grid = {*cfg.grid_c, *cfg.grid_k};
    else if (cfg.grid_k)
        grid = {c0, *cfg.grid_k};
    else if (cfg.grid_c)
        grid = {*cfg.grid_c, static_cast<int>(std::lround(2.0 * *cfg.grid_c / cfg.dy)) + 1};
    else
        grid = NystromGrid::with_spacing(c0, cfg.dy);
    grid.validate();
    return grid;
}

inline FiniteGResult run_finite_g(FiniteGConfig cfg)
{
    if (cfg.d != 1.0)
        throw Unsupported("finite-g pipeline supports d = 1 only");
    if (cfg.n < 2)
        throw InvalidArgument("finite-g: N must be >= 2");
    if (!(cfg.dy > 0.0))
        throw InvalidArgument("finite-g: dy must be > 0");

    FiniteGResult res;
    std::optional<CorrelationFactor> f;
    if (cfg.magic_n) {
        const OddSeries s = magic_g(*cfg.magic_n);
        cfg.g = s.g_magic;
        res.relative_energy = s.e_rel;
        f = make_correlation_factor(s);
    } else if (cfg.g == 0.0) {
        res.relative_energy = 1.5;
        f = CorrelationFactor::tonks();
    } else if (cfg.g > 0.0) {
        const RelativeSolution r = relative_ground_odd(cfg.g, cfg.basis_size, cfg.d);
        res.relative_energy = r.e_rel;
        f = make_correlation_factor(r);
    } else {
        throw InvalidArgument("finite-g: g must be >= 0");
    }
    res.factor = f->provenance();

    const Integrator integ = cfg.integrator.value_or(cfg.n <= 3 ? Integrator::quadrature : Integrator::monte_carlo);
    if (integ == Integrator::quadrature && cfg.n > 3)
        throw Unsupported("finite-g: quadrature mode supports N <= 3; use monte-carlo");
    cfg.integrator = integ;
    res.grid = resolve_grid(cfg);

    if (cfg.alpha) {
        res.optimum.alpha = *cfg.alpha;
        res.optimum.quadrature_order = cfg.quadrature.order;
    } else {
        res.optimum = optimize_alpha(cfg.n, cfg.g, *f, res.grid, integ, cfg.alpha_lo, cfg.alpha_hi, cfg.quadrature,
                                     cfg.monte_carlo);
    }
    const JastrowAnsatz psi(cfg.n, res.optimum.alpha, *f);

    if (integ == Integrator::quadrature) {
        const int order = std::max(cfg.quadrature.order, res.optimum.quadrature_order);
        const EnergyValue ev = quadrature_energy(psi, cfg.g, res.grid.c, order);
        if (cfg.alpha)
            res.optimum.energy = ev.energy;
        res.rdm = rdm_matrix_quadrature(psi, res.grid, ev.norm, cfg.quadrature.rdm_order);
    } else {
        res.rdm = rdm_matrix_monte_carlo(psi, cfg.g, res.grid, cfg.monte_carlo);
    }
    res.occupancies = diagonalize_rdm(res.rdm, res.grid.dy());
    res.report = finite_report(res.occupancies.lambda);

    res.warnings = res.optimum.warnings;
    res.warnings.insert(res.warnings.end(), res.occupancies.warnings.begin(), res.occupancies.warnings.end());
    res.config = cfg;
    return res;
}

} // namespace wigner

#endif // WIGNER_FINITE_G_HPP
