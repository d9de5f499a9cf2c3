#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "snowwalk/measures.hpp"

namespace snowwalk {

/// Directed edge weights on the mesh graph: w[i][j] = 1 - d_rel(j) for every
/// mesh edge i~j, so walkers are pulled toward confined (low d_rat_min)
/// nodes. Strengths are the outgoing weight sums. Nodes that end up with
/// neither incoming nor outgoing weight are pruned (their edges removed and
/// their ids recorded); everything else keeps its mesh node id.
struct WeightedGraph {
    int n = 0;
    std::vector<std::vector<int>> out_neighbors; // per source, sorted
    std::vector<std::vector<double>> out_weights; // aligned with out_neighbors
    std::vector<double> strength;                 // St_i
    std::vector<double> one_minus_d_rel;          // 1 - d_rel(i)
    std::vector<int> pruned;                      // isolated node ids, usually empty
    std::vector<char> active;                     // active[i] == 0 iff pruned

    double weight(int i, int j) const;
    std::size_t edge_count() const;
};

/// Build the weighted graph from mesh adjacency and relative distances.
/// Throws ConnectivityError when the active subgraph is disconnected.
WeightedGraph build_weights(const Mesh& mesh, const MeasureTable& table);

/// Core construction on a raw adjacency list; exposed for graphs that do not
/// come from a mesh.
WeightedGraph build_weights(const std::vector<std::vector<int>>& adjacency,
                            const std::vector<double>& d_rel);

/// Column-stochastic transfer operator T[i][j] = w[j][i] / St_j, stored by
/// column: column j is source node j's outgoing probability distribution.
struct TransferOperator {
    int n = 0;
    std::vector<std::vector<int>> targets;     // per source column j
    std::vector<std::vector<double>> probs;    // w[j][k] / St_j
    std::vector<char> active;

    /// out = T * in. Aliasing is not allowed.
    void apply(std::span<const double> in, std::span<double> out) const;
    std::vector<double> column_sums() const;
    /// Dense row-major copy (n x n), for small meshes.
    std::vector<double> to_dense() const;
};

/// Throws PreconditionError when an active node has zero strength.
TransferOperator build_transfer(const WeightedGraph& graph);

/// Walker density at a time step. Entries are non-negative and sum to 1.
struct DensityState {
    std::vector<double> eta;
    long t = 0;
};

/// Density concentrated at one node.
DensityState delta_density(int n, int node);

struct StepOptions {
    bool renormalize = true;
    double renorm_trigger = 1e-13; // rescale when |sum - 1| exceeds this
};

/// One master-equation update eta(t+1) = T eta(t).
DensityState step(const TransferOperator& T, const DensityState& state,
                  const StepOptions& options = {});

enum class Termination { fixed_point, two_cycle, max_steps };

std::string to_string(Termination t);

struct EvolveOptions {
    long max_steps = 100000;
    double tolerance = 1e-12; // max-norm change threshold
    int snapshot_stride = 0;  // 0: keep no intermediate densities
    StepOptions step;
    /// Called as observer(t, eta) for every state including t = 0.
    std::function<void(long, std::span<const double>)> observer;
};

struct Trajectory {
    Termination termination = Termination::max_steps;
    long steps = 0;                  // time of final_eta
    std::vector<double> final_eta;   // eta(steps)
    std::vector<double> previous_eta; // eta(steps - 1); empty when steps == 0
    std::vector<std::pair<long, std::vector<double>>> snapshots;

    /// The two alternating states of a 2-cycle (final and previous), or the
    /// fixed point twice.
    std::pair<std::vector<double>, std::vector<double>> cycle_states() const;
};

/// Iterate the master equation until the density reaches a fixed point, a
/// 2-cycle, or the step cap. Non-convergence is reported, not thrown.
Trajectory evolve(const TransferOperator& T, DensityState initial, const EvolveOptions& options = {});

/// Closed-form stationary state: pi_i proportional to (1 - d_rel(i)) * St_i.
/// Satisfies T pi = pi by detailed balance of the weight construction.
std::vector<double> analytic_stationary(const WeightedGraph& graph);

/// Per-edge currents C_ij = w_ij * eta_i / St_i aggregated per node:
/// outflow J+_i = sum_j C_ij (equals eta_i) and inflow J-_i = sum_j C_ji.
struct NodeCurrents {
    std::vector<double> outflow;
    std::vector<double> inflow;
};

NodeCurrents node_currents(const WeightedGraph& graph, std::span<const double> eta);

/// Sparse symmetric matrix in aligned adjacency storage.
struct SparseSymmetric {
    int n = 0;
    std::vector<std::vector<int>> cols;
    std::vector<std::vector<double>> vals;

    void apply(std::span<const double> in, std::span<double> out) const;
    double max_asymmetry() const;
};

/// Similarity transform M[i][j] = T[i][j] * sqrt(pi_j / pi_i), symmetric for
/// the reversible chain. Throws PreconditionError unless pi is strictly
/// positive on active nodes.
SparseSymmetric symmetrize(const TransferOperator& T, std::span<const double> pi);

struct SpectralSummary {
    std::vector<double> eigenvalues;   // sorted descending
    std::vector<double> leading;       // stationary direction, sums to 1
    double spectral_gap = 0.0;         // 1 - max(|lambda_2|, |lambda_n|)
    bool has_minus_one = false;        // bipartite indicator
    double min_eigenvalue = 0.0;
};

struct SpectrumOptions {
    int dense_cap = 20000;  // dense solve up to this many recurrent nodes
    int max_iterations = 20000;
    double iteration_tol = 1e-12;
    std::uint64_t seed = 0x5eed5eedULL; // start basis for orthogonal iteration
};

/// Top-k eigenvalues of T (through the symmetrized operator restricted to
/// the recurrent nodes, padded with one zero per transient node) and the
/// stationary eigenvector.
SpectralSummary spectrum(const TransferOperator& T, const WeightedGraph& graph, int k,
                         const SpectrumOptions& options = {});

/// Empirical densities from N independent walkers moved with transition
/// probabilities w[i][j]/St_i. Returns steps+1 rows (t = 0..steps). Output is
/// a deterministic function of the arguments.
std::vector<std::vector<double>> monte_carlo_walk(const WeightedGraph& graph, int start,
                                                  std::int64_t n_walkers, long steps,
                                                  std::uint64_t seed);

/// Two-coloring test of the active subgraph.
bool is_bipartite(const WeightedGraph& graph);

} // namespace snowwalk
