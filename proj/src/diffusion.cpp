#include "snowwalk/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include <Eigen/Dense>

namespace snowwalk {

namespace {

// splitmix64, used to derive per-chunk RNG streams from the master seed.
std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256** — small, fully specified, reproducible across platforms.
struct Xoshiro256 {
    std::uint64_t s[4];

    explicit Xoshiro256(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : s) word = splitmix64(sm);
    }

    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s[1] * 5, 7) * 9;
        const std::uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }

    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

double linf_diff(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

std::vector<int> recurrent_nodes(const WeightedGraph& graph, std::span<const double> pi) {
    std::vector<int> idx;
    for (int i = 0; i < graph.n; ++i) {
        if (graph.active[static_cast<std::size_t>(i)] && pi[static_cast<std::size_t>(i)] > 0.0) {
            idx.push_back(i);
        }
    }
    return idx;
}

} // namespace

double WeightedGraph::weight(int i, int j) const {
    const auto& nb = out_neighbors[static_cast<std::size_t>(i)];
    const auto it = std::lower_bound(nb.begin(), nb.end(), j);
    if (it == nb.end() || *it != j) return 0.0;
    return out_weights[static_cast<std::size_t>(i)][static_cast<std::size_t>(it - nb.begin())];
}

std::size_t WeightedGraph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& nb : out_neighbors) twice += nb.size();
    return twice / 2;
}

WeightedGraph build_weights(const std::vector<std::vector<int>>& adjacency,
                            const std::vector<double>& d_rel) {
    const int n = static_cast<int>(adjacency.size());
    if (d_rel.size() != adjacency.size()) {
        throw PreconditionError("d_rel length does not match adjacency");
    }

    WeightedGraph g;
    g.n = n;
    g.active.assign(static_cast<std::size_t>(n), 1);
    g.one_minus_d_rel.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        g.one_minus_d_rel[static_cast<std::size_t>(i)] = 1.0 - d_rel[static_cast<std::size_t>(i)];
    }

    // Iteratively drop nodes with zero strength and zero incoming weight:
    // such a node neither sends nor receives walkers (every neighbor, and the
    // node itself, sits at the domain maximum of d_rat_min).
    std::vector<char> removed(static_cast<std::size_t>(n), 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n; ++i) {
            if (removed[static_cast<std::size_t>(i)]) continue;
            double strength = 0.0;
            bool incoming = false;
            for (int j : adjacency[static_cast<std::size_t>(i)]) {
                if (removed[static_cast<std::size_t>(j)]) continue;
                strength += g.one_minus_d_rel[static_cast<std::size_t>(j)];
                if (g.one_minus_d_rel[static_cast<std::size_t>(i)] > 0.0) incoming = true;
            }
            if (strength == 0.0 && !incoming) {
                removed[static_cast<std::size_t>(i)] = 1;
                g.pruned.push_back(i);
                g.active[static_cast<std::size_t>(i)] = 0;
                changed = true;
            }
        }
    }
    if (std::all_of(removed.begin(), removed.end(), [](char r) { return r != 0; })) {
        throw ConnectivityError("every node was pruned: all weights are zero");
    }

    g.out_neighbors.resize(static_cast<std::size_t>(n));
    g.out_weights.resize(static_cast<std::size_t>(n));
    g.strength.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        if (removed[static_cast<std::size_t>(i)]) continue;
        for (int j : adjacency[static_cast<std::size_t>(i)]) {
            if (removed[static_cast<std::size_t>(j)]) continue;
            const double w = g.one_minus_d_rel[static_cast<std::size_t>(j)];
            g.out_neighbors[static_cast<std::size_t>(i)].push_back(j);
            g.out_weights[static_cast<std::size_t>(i)].push_back(w);
            g.strength[static_cast<std::size_t>(i)] += w;
        }
    }

    // Connectivity of the active subgraph (ignoring edge direction).
    int start = -1;
    int n_active = 0;
    for (int i = 0; i < n; ++i) {
        if (!removed[static_cast<std::size_t>(i)]) {
            if (start < 0) start = i;
            ++n_active;
        }
    }
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::deque<int> queue{start};
    seen[static_cast<std::size_t>(start)] = 1;
    int n_seen = 1;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (int v : g.out_neighbors[static_cast<std::size_t>(u)]) {
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                ++n_seen;
                queue.push_back(v);
            }
        }
    }
    if (n_seen != n_active) {
        throw ConnectivityError("weighted graph is disconnected after pruning (" +
                                std::to_string(n_seen) + " of " + std::to_string(n_active) +
                                " active nodes reachable)");
    }
    return g;
}

WeightedGraph build_weights(const Mesh& mesh, const MeasureTable& table) {
    if (static_cast<int>(table.nodes.size()) != mesh.size()) {
        throw PreconditionError("measure table does not match mesh");
    }
    std::vector<double> d_rel;
    d_rel.reserve(table.nodes.size());
    for (const auto& nm : table.nodes) d_rel.push_back(nm.d_rel);
    return build_weights(mesh.neighbors, d_rel);
}

void TransferOperator::apply(std::span<const double> in, std::span<double> out) const {
    std::fill(out.begin(), out.end(), 0.0);
    for (int j = 0; j < n; ++j) {
        const double mass = in[static_cast<std::size_t>(j)];
        if (mass == 0.0) continue;
        const auto& ts = targets[static_cast<std::size_t>(j)];
        const auto& ps = probs[static_cast<std::size_t>(j)];
        for (std::size_t k = 0; k < ts.size(); ++k) {
            out[static_cast<std::size_t>(ts[k])] += ps[k] * mass;
        }
    }
}

std::vector<double> TransferOperator::column_sums() const {
    std::vector<double> sums(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (double p : probs[static_cast<std::size_t>(j)]) s += p;
        sums[static_cast<std::size_t>(j)] = s;
    }
    return sums;
}

std::vector<double> TransferOperator::to_dense() const {
    std::vector<double> dense(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        const auto& ts = targets[static_cast<std::size_t>(j)];
        const auto& ps = probs[static_cast<std::size_t>(j)];
        for (std::size_t k = 0; k < ts.size(); ++k) {
            dense[static_cast<std::size_t>(ts[k]) * static_cast<std::size_t>(n) +
                  static_cast<std::size_t>(j)] = ps[k];
        }
    }
    return dense;
}

TransferOperator build_transfer(const WeightedGraph& graph) {
    TransferOperator T;
    T.n = graph.n;
    T.active = graph.active;
    T.targets.resize(static_cast<std::size_t>(graph.n));
    T.probs.resize(static_cast<std::size_t>(graph.n));
    for (int j = 0; j < graph.n; ++j) {
        if (!graph.active[static_cast<std::size_t>(j)]) continue;
        const double st = graph.strength[static_cast<std::size_t>(j)];
        if (st <= 0.0) {
            throw PreconditionError("node " + std::to_string(j) +
                                    " has zero strength; transfer operator undefined");
        }
        T.targets[static_cast<std::size_t>(j)] = graph.out_neighbors[static_cast<std::size_t>(j)];
        auto& ps = T.probs[static_cast<std::size_t>(j)];
        ps.reserve(graph.out_weights[static_cast<std::size_t>(j)].size());
        for (double w : graph.out_weights[static_cast<std::size_t>(j)]) ps.push_back(w / st);
    }
    return T;
}

DensityState delta_density(int n, int node) {
    if (node < 0 || node >= n) throw DataError("unknown node id " + std::to_string(node));
    DensityState state;
    state.eta.assign(static_cast<std::size_t>(n), 0.0);
    state.eta[static_cast<std::size_t>(node)] = 1.0;
    return state;
}

DensityState step(const TransferOperator& T, const DensityState& state, const StepOptions& options) {
    if (static_cast<int>(state.eta.size()) != T.n) {
        throw PreconditionError("density length does not match operator");
    }
    for (int i = 0; i < T.n; ++i) {
        if (!T.active[static_cast<std::size_t>(i)] && state.eta[static_cast<std::size_t>(i)] != 0.0) {
            throw PreconditionError("density has mass on pruned node " + std::to_string(i));
        }
    }
    DensityState next;
    next.t = state.t + 1;
    next.eta.resize(state.eta.size());
    T.apply(state.eta, next.eta);
    if (options.renormalize) {
        const double total = std::accumulate(next.eta.begin(), next.eta.end(), 0.0);
        if (std::abs(total - 1.0) > options.renorm_trigger && total > 0.0) {
            for (double& v : next.eta) v /= total;
        }
    }
    return next;
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::fixed_point: return "fixed_point";
        case Termination::two_cycle: return "two_cycle";
        case Termination::max_steps: return "max_steps";
    }
    return "max_steps";
}

std::pair<std::vector<double>, std::vector<double>> Trajectory::cycle_states() const {
    if (termination == Termination::two_cycle && !previous_eta.empty()) {
        return {previous_eta, final_eta};
    }
    return {final_eta, final_eta};
}

Trajectory evolve(const TransferOperator& T, DensityState state, const EvolveOptions& options) {
    Trajectory traj;
    if (options.observer) options.observer(state.t, state.eta);
    if (options.snapshot_stride > 0) traj.snapshots.emplace_back(state.t, state.eta);

    std::vector<double> prev2;
    std::vector<double> prev1 = state.eta;
    const long t0 = state.t;
    for (long k = 1; k <= options.max_steps; ++k) {
        DensityState next = step(T, state, options.step);
        if (options.observer) options.observer(next.t, next.eta);
        if (options.snapshot_stride > 0 && (next.t - t0) % options.snapshot_stride == 0) {
            traj.snapshots.emplace_back(next.t, next.eta);
        }
        const double d1 = linf_diff(next.eta, prev1);
        if (d1 < options.tolerance) {
            traj.termination = Termination::fixed_point;
            traj.steps = next.t;
            traj.final_eta = std::move(next.eta);
            traj.previous_eta = std::move(prev1);
            return traj;
        }
        if (!prev2.empty()) {
            const double d2 = linf_diff(next.eta, prev2);
            if (d2 < options.tolerance) {
                traj.termination = Termination::two_cycle;
                traj.steps = next.t;
                traj.final_eta = std::move(next.eta);
                traj.previous_eta = std::move(prev1);
                return traj;
            }
        }
        prev2 = std::move(prev1);
        prev1 = next.eta;
        state = std::move(next);
    }
    traj.termination = Termination::max_steps;
    traj.steps = state.t;
    traj.final_eta = std::move(state.eta);
    traj.previous_eta = std::move(prev2);
    return traj;
}

std::vector<double> analytic_stationary(const WeightedGraph& graph) {
    std::vector<double> pi(static_cast<std::size_t>(graph.n), 0.0);
    double total = 0.0;
    for (int i = 0; i < graph.n; ++i) {
        if (!graph.active[static_cast<std::size_t>(i)]) continue;
        const double v = graph.one_minus_d_rel[static_cast<std::size_t>(i)] *
                         graph.strength[static_cast<std::size_t>(i)];
        pi[static_cast<std::size_t>(i)] = v;
        total += v;
    }
    if (total <= 0.0) throw ConnectivityError("stationary state is identically zero");
    for (double& v : pi) v /= total;
    return pi;
}

NodeCurrents node_currents(const WeightedGraph& graph, std::span<const double> eta) {
    if (static_cast<int>(eta.size()) != graph.n) {
        throw PreconditionError("density length does not match graph");
    }
    NodeCurrents currents;
    currents.outflow.assign(static_cast<std::size_t>(graph.n), 0.0);
    currents.inflow.assign(static_cast<std::size_t>(graph.n), 0.0);
    for (int i = 0; i < graph.n; ++i) {
        if (!graph.active[static_cast<std::size_t>(i)]) continue;
        const double ci = eta[static_cast<std::size_t>(i)] / graph.strength[static_cast<std::size_t>(i)];
        const auto& nb = graph.out_neighbors[static_cast<std::size_t>(i)];
        const auto& ws = graph.out_weights[static_cast<std::size_t>(i)];
        for (std::size_t k = 0; k < nb.size(); ++k) {
            const double c_ij = ws[k] * ci;
            currents.outflow[static_cast<std::size_t>(i)] += c_ij;
            currents.inflow[static_cast<std::size_t>(nb[k])] += c_ij;
        }
    }
    return currents;
}

void SparseSymmetric::apply(std::span<const double> in, std::span<double> out) const {
    std::fill(out.begin(), out.end(), 0.0);
    for (int i = 0; i < n; ++i) {
        const auto& cs = cols[static_cast<std::size_t>(i)];
        const auto& vs = vals[static_cast<std::size_t>(i)];
        double acc = 0.0;
        for (std::size_t k = 0; k < cs.size(); ++k) {
            acc += vs[k] * in[static_cast<std::size_t>(cs[k])];
        }
        out[static_cast<std::size_t>(i)] = acc;
    }
}

double SparseSymmetric::max_asymmetry() const {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto& cs = cols[static_cast<std::size_t>(i)];
        const auto& vs = vals[static_cast<std::size_t>(i)];
        for (std::size_t k = 0; k < cs.size(); ++k) {
            const int j = cs[k];
            const auto& cj = cols[static_cast<std::size_t>(j)];
            const auto it = std::lower_bound(cj.begin(), cj.end(), i);
            double mirrored = 0.0;
            if (it != cj.end() && *it == i) {
                mirrored = vals[static_cast<std::size_t>(j)][static_cast<std::size_t>(it - cj.begin())];
            }
            worst = std::max(worst, std::abs(vs[k] - mirrored));
        }
    }
    return worst;
}

SparseSymmetric symmetrize(const TransferOperator& T, std::span<const double> pi) {
    if (static_cast<int>(pi.size()) != T.n) {
        throw PreconditionError("pi length does not match operator");
    }
    for (int i = 0; i < T.n; ++i) {
        if (T.active[static_cast<std::size_t>(i)] && pi[static_cast<std::size_t>(i)] <= 0.0) {
            throw PreconditionError("pi must be strictly positive on active nodes");
        }
    }
    SparseSymmetric M;
    M.n = T.n;
    M.cols.resize(static_cast<std::size_t>(T.n));
    M.vals.resize(static_cast<std::size_t>(T.n));
    // T is stored by column; M[i][j] = T[i][j] sqrt(pi_j / pi_i).
    for (int j = 0; j < T.n; ++j) {
        const auto& ts = T.targets[static_cast<std::size_t>(j)];
        const auto& ps = T.probs[static_cast<std::size_t>(j)];
        for (std::size_t k = 0; k < ts.size(); ++k) {
            const int i = ts[k];
            const double v = ps[k] * std::sqrt(pi[static_cast<std::size_t>(j)] /
                                               pi[static_cast<std::size_t>(i)]);
            M.cols[static_cast<std::size_t>(i)].push_back(j);
            M.vals[static_cast<std::size_t>(i)].push_back(v);
        }
    }
    for (int i = 0; i < M.n; ++i) {
        auto& cs = M.cols[static_cast<std::size_t>(i)];
        auto& vs = M.vals[static_cast<std::size_t>(i)];
        std::vector<std::size_t> order(cs.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cs[a] < cs[b]; });
        std::vector<int> cs2(cs.size());
        std::vector<double> vs2(vs.size());
        for (std::size_t k = 0; k < order.size(); ++k) {
            cs2[k] = cs[order[k]];
            vs2[k] = vs[order[k]];
        }
        cs = std::move(cs2);
        vs = std::move(vs2);
    }
    return M;
}

bool is_bipartite(const WeightedGraph& graph) {
    std::vector<int> color(static_cast<std::size_t>(graph.n), -1);
    for (int seed = 0; seed < graph.n; ++seed) {
        if (!graph.active[static_cast<std::size_t>(seed)] || color[static_cast<std::size_t>(seed)] >= 0) {
            continue;
        }
        color[static_cast<std::size_t>(seed)] = 0;
        std::deque<int> queue{seed};
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (int v : graph.out_neighbors[static_cast<std::size_t>(u)]) {
                if (color[static_cast<std::size_t>(v)] < 0) {
                    color[static_cast<std::size_t>(v)] = 1 - color[static_cast<std::size_t>(u)];
                    queue.push_back(v);
                } else if (color[static_cast<std::size_t>(v)] == color[static_cast<std::size_t>(u)]) {
                    return false;
                }
            }
        }
    }
    return true;
}

namespace {

// Restriction of the symmetrized operator to the recurrent nodes, the
// orthogonal-iteration fallback, and spectrum assembly.

struct RestrictedSym {
    int m = 0;
    std::vector<int> global_ids; // restricted index -> graph node id
    std::vector<std::vector<int>> cols;
    std::vector<std::vector<double>> vals;

    void apply(const Eigen::VectorXd& in, Eigen::VectorXd& out) const {
        out.setZero(m);
        for (int i = 0; i < m; ++i) {
            const auto& cs = cols[static_cast<std::size_t>(i)];
            const auto& vs = vals[static_cast<std::size_t>(i)];
            double acc = 0.0;
            for (std::size_t k = 0; k < cs.size(); ++k) acc += vs[k] * in[cs[k]];
            out[i] = acc;
        }
    }
};

RestrictedSym restrict_symmetric(const TransferOperator& T, std::span<const double> pi,
                                 const std::vector<int>& recurrent) {
    RestrictedSym R;
    R.m = static_cast<int>(recurrent.size());
    R.global_ids = recurrent;
    std::vector<int> local(static_cast<std::size_t>(T.n), -1);
    for (int k = 0; k < R.m; ++k) local[static_cast<std::size_t>(recurrent[static_cast<std::size_t>(k)])] = k;
    R.cols.resize(static_cast<std::size_t>(R.m));
    R.vals.resize(static_cast<std::size_t>(R.m));
    for (int j = 0; j < T.n; ++j) {
        const int lj = local[static_cast<std::size_t>(j)];
        if (lj < 0) continue;
        const auto& ts = T.targets[static_cast<std::size_t>(j)];
        const auto& ps = T.probs[static_cast<std::size_t>(j)];
        for (std::size_t k = 0; k < ts.size(); ++k) {
            const int li = local[static_cast<std::size_t>(ts[k])];
            if (li < 0) continue;
            const double v = ps[k] * std::sqrt(pi[static_cast<std::size_t>(j)] /
                                               pi[static_cast<std::size_t>(ts[k])]);
            R.cols[static_cast<std::size_t>(li)].push_back(lj);
            R.vals[static_cast<std::size_t>(li)].push_back(v);
        }
    }
    return R;
}

std::vector<double> dense_restricted_eigenvalues(const RestrictedSym& R) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(R.m, R.m);
    for (int i = 0; i < R.m; ++i) {
        const auto& cs = R.cols[static_cast<std::size_t>(i)];
        const auto& vs = R.vals[static_cast<std::size_t>(i)];
        for (std::size_t k = 0; k < cs.size(); ++k) M(i, cs[k]) = vs[k];
    }
    // Enforce exact symmetry before the solve; entries differ by rounding only.
    M = 0.5 * (M + M.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("dense symmetric eigensolve failed");
    }
    std::vector<double> vals(solver.eigenvalues().data(), solver.eigenvalues().data() + R.m);
    std::sort(vals.begin(), vals.end(), std::greater<>());
    return vals;
}

// Orthogonal iteration for the k algebraically largest eigenvalues of the
// (shifted) restricted operator.
std::vector<double> iterate_top_eigenvalues(const RestrictedSym& R, int k, bool negate,
                                            const SpectrumOptions& options) {
    const int m = R.m;
    k = std::min(k, m);
    // Shift by +I so the algebraically largest eigenvalues dominate in
    // magnitude (spectrum of M lies in [-1, 1]).
    Eigen::MatrixXd Q(m, k);
    Xoshiro256 rng(options.seed);
    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < m; ++i) Q(i, j) = rng.next_double() - 0.5;
    }
    Q = Eigen::HouseholderQR<Eigen::MatrixXd>(Q).householderQ() * Eigen::MatrixXd::Identity(m, k);

    Eigen::VectorXd column(m), image(m);
    Eigen::VectorXd previous = Eigen::VectorXd::Zero(k);
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        Eigen::MatrixXd Z(m, k);
        for (int j = 0; j < k; ++j) {
            column = Q.col(j);
            R.apply(column, image);
            if (negate) image = -image;
            Z.col(j) = image + column; // shifted operator M' = M + I
        }
        Q = Eigen::HouseholderQR<Eigen::MatrixXd>(Z).householderQ() * Eigen::MatrixXd::Identity(m, k);
        // Rayleigh-Ritz values of the unshifted operator.
        Eigen::MatrixXd MQ(m, k);
        for (int j = 0; j < k; ++j) {
            column = Q.col(j);
            R.apply(column, image);
            if (negate) image = -image;
            MQ.col(j) = image;
        }
        Eigen::MatrixXd S = Q.transpose() * MQ;
        S = 0.5 * (S + S.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(S, Eigen::EigenvaluesOnly);
        Eigen::VectorXd ritz = small.eigenvalues().reverse();
        if ((ritz - previous).cwiseAbs().maxCoeff() < options.iteration_tol) {
            return std::vector<double>(ritz.data(), ritz.data() + k);
        }
        previous = ritz;
    }
    throw NumericalError("orthogonal iteration did not converge within " +
                         std::to_string(options.max_iterations) + " sweeps");
}

} // namespace

SpectralSummary spectrum(const TransferOperator& T, const WeightedGraph& graph, int k,
                         const SpectrumOptions& options) {
    if (k < 1) throw PreconditionError("eigenvalue count must be at least 1");
    const std::vector<double> pi = analytic_stationary(graph);
    const std::vector<int> recurrent = recurrent_nodes(graph, pi);
    const int n_transient = graph.n - static_cast<int>(graph.pruned.size()) -
                            static_cast<int>(recurrent.size());
    const RestrictedSym R = restrict_symmetric(T, pi, recurrent);

    SpectralSummary summary;
    std::vector<double> eigenvalues;
    if (R.m <= options.dense_cap) {
        eigenvalues = dense_restricted_eigenvalues(R);
    } else {
        eigenvalues = iterate_top_eigenvalues(R, k, false, options);
        const std::vector<double> bottom = iterate_top_eigenvalues(R, 1, true, options);
        summary.min_eigenvalue = -bottom.front();
    }
    // The transient nodes (pi = 0, no incoming weight) each contribute one
    // zero eigenvalue to T beyond the recurrent block.
    for (int t = 0; t < n_transient; ++t) eigenvalues.push_back(0.0);
    std::sort(eigenvalues.begin(), eigenvalues.end(), std::greater<>());
    if (R.m <= options.dense_cap) summary.min_eigenvalue = eigenvalues.back();

    const int take = std::min<int>(k, static_cast<int>(eigenvalues.size()));
    summary.eigenvalues.assign(eigenvalues.begin(), eigenvalues.begin() + take);
    summary.leading = pi;
    summary.has_minus_one = is_bipartite(graph);
    const double second = eigenvalues.size() > 1 ? std::abs(eigenvalues[1]) : 0.0;
    summary.spectral_gap = 1.0 - std::max(second, std::abs(summary.min_eigenvalue));
    return summary;
}

std::vector<std::vector<double>> monte_carlo_walk(const WeightedGraph& graph, int start,
                                                  std::int64_t n_walkers, long steps,
                                                  std::uint64_t seed) {
    if (start < 0 || start >= graph.n) throw DataError("unknown node id " + std::to_string(start));
    if (!graph.active[static_cast<std::size_t>(start)]) {
        throw PreconditionError("start node was pruned from the graph");
    }
    if (n_walkers < 1) throw PreconditionError("need at least one walker");
    if (steps < 0) throw PreconditionError("steps must be non-negative");

    // Per-node cumulative transition probabilities.
    std::vector<std::vector<double>> cumulative(static_cast<std::size_t>(graph.n));
    for (int i = 0; i < graph.n; ++i) {
        if (!graph.active[static_cast<std::size_t>(i)]) continue;
        const auto& ws = graph.out_weights[static_cast<std::size_t>(i)];
        auto& cum = cumulative[static_cast<std::size_t>(i)];
        cum.resize(ws.size());
        double acc = 0.0;
        const double st = graph.strength[static_cast<std::size_t>(i)];
        for (std::size_t kk = 0; kk < ws.size(); ++kk) {
            acc += ws[kk] / st;
            cum[kk] = acc;
        }
        if (!cum.empty()) cum.back() = 1.0;
    }

    std::vector<std::vector<std::int64_t>> counts(
        static_cast<std::size_t>(steps) + 1,
        std::vector<std::int64_t>(static_cast<std::size_t>(graph.n), 0));
    counts[0][static_cast<std::size_t>(start)] = n_walkers;

    // Walkers are processed in fixed-size chunks, each with its own RNG
    // substream derived from the master seed, so the result does not depend
    // on how chunks would be scheduled across workers.
    constexpr std::int64_t kChunk = 1 << 16;
    for (std::int64_t chunk_begin = 0; chunk_begin < n_walkers; chunk_begin += kChunk) {
        const std::int64_t chunk_size = std::min(kChunk, n_walkers - chunk_begin);
        std::uint64_t mix = seed;
        (void)splitmix64(mix);
        mix ^= static_cast<std::uint64_t>(chunk_begin / kChunk) * 0x9e3779b97f4a7c15ULL;
        Xoshiro256 rng(mix);
        std::vector<int> position(static_cast<std::size_t>(chunk_size), start);
        for (long t = 1; t <= steps; ++t) {
            auto& row = counts[static_cast<std::size_t>(t)];
            for (std::int64_t w = 0; w < chunk_size; ++w) {
                const int node = position[static_cast<std::size_t>(w)];
                const auto& cum = cumulative[static_cast<std::size_t>(node)];
                const double u = rng.next_double();
                const std::size_t pick = static_cast<std::size_t>(
                    std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
                const int dest = graph.out_neighbors[static_cast<std::size_t>(node)]
                                                    [std::min(pick, cum.size() - 1)];
                position[static_cast<std::size_t>(w)] = dest;
                ++row[static_cast<std::size_t>(dest)];
            }
        }
    }

    std::vector<std::vector<double>> densities(static_cast<std::size_t>(steps) + 1);
    for (long t = 0; t <= steps; ++t) {
        auto& row = densities[static_cast<std::size_t>(t)];
        row.resize(static_cast<std::size_t>(graph.n));
        for (int i = 0; i < graph.n; ++i) {
            row[static_cast<std::size_t>(i)] =
                static_cast<double>(counts[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)]) /
                static_cast<double>(n_walkers);
        }
    }
    return densities;
}

} // namespace snowwalk
