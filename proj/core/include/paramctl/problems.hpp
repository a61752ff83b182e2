#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "paramctl/genome.hpp"
#include "paramctl/operators.hpp"
#include "paramctl/rng.hpp"

namespace paramctl {

enum class Direction { Maximize, Minimize };

/// A pseudo-Boolean benchmark instance. Evaluation is deterministic and
/// read-only; callers own their evaluation counters (see Evaluator in the
/// algorithms module), so one instance can serve many concurrent trials.
class BitProblem {
public:
    virtual ~BitProblem() = default;

    int dimension() const { return n_; }
    Direction direction() const { return direction_; }
    /// Known optimal fitness value.
    double optimum() const { return optimum_; }
    const std::string& name() const { return name_; }

    virtual double evaluate(const BitString& x) const = 0;

    /// Fitness of the string obtained from `parent` by flipping the given
    /// distinct positions. Must agree exactly with materializing the
    /// offspring and calling evaluate(); overrides exist where that is
    /// much cheaper than a full scan.
    virtual double evaluate_flipped(const BitString& parent, double parent_fitness,
                                    std::span<const int> flips) const;

    bool is_optimal(double fitness) const { return fitness == optimum_; }
    bool better(double a, double b) const {
        return direction_ == Direction::Maximize ? a > b : a < b;
    }
    bool at_least_as_good(double a, double b) const {
        return direction_ == Direction::Maximize ? a >= b : a <= b;
    }

protected:
    BitProblem(std::string name, int n, Direction direction, double optimum)
        : name_(std::move(name)), n_(n), direction_(direction), optimum_(optimum) {}

private:
    std::string name_;
    int n_;
    Direction direction_;
    double optimum_;
};

/// OM_z: number of positions agreeing with the target z (all-ones default).
class OneMaxProblem final : public BitProblem {
public:
    explicit OneMaxProblem(int n);
    OneMaxProblem(int n, BitString target);

    double evaluate(const BitString& x) const override;
    double evaluate_flipped(const BitString& parent, double parent_fitness,
                            std::span<const int> flips) const override;
    const BitString& target() const { return target_; }

private:
    BitString target_;
};

/// LeadingOnes instance: target z and permutation sigma; the fitness is the
/// length of the longest prefix, in sigma-order, on which x agrees with z.
struct LOInstance {
    BitString target;
    std::vector<int> sigma; // sigma[j] = position checked at prefix slot j (0-based)
};

LOInstance canonical_lo_instance(int n);
LOInstance gen_random_lo_instance(int n, RandomSource& rng);

class LeadingOnesProblem final : public BitProblem {
public:
    explicit LeadingOnesProblem(int n); // all-ones target, identity permutation
    LeadingOnesProblem(int n, LOInstance instance);

    double evaluate(const BitString& x) const override;
    double evaluate_flipped(const BitString& parent, double parent_fitness,
                            std::span<const int> flips) const override;
    const LOInstance& instance() const { return inst_; }

private:
    LOInstance inst_;
    std::vector<int> rank_; // rank_[pos] = 1-based slot of pos in sigma order
    // scratch for membership tests in evaluate_flipped
    mutable std::vector<std::uint32_t> mark_;
    mutable std::uint32_t epoch_ = 0;
};

/// Jump_k with the standard gap definition: k + OM(x) when OM(x) <= n-k or
/// OM(x) = n, and n - OM(x) inside the gap.
class JumpProblem final : public BitProblem {
public:
    JumpProblem(int n, int k);
    double evaluate(const BitString& x) const override;
    double evaluate_flipped(const BitString& parent, double parent_fitness,
                            std::span<const int> flips) const override;
    int gap() const { return k_; }
    double from_ones_count(int ones) const;

private:
    int ones_from_value(double v) const;
    int k_;
};

/// Plateau_k: OneMax outside [n-k+1 .. n-1], constant n-k on the plateau.
class PlateauProblem final : public BitProblem {
public:
    PlateauProblem(int n, int k);
    double evaluate(const BitString& x) const override;
    int gap() const { return k_; }
    double from_ones_count(int ones) const;

private:
    int k_;
};

/// Weighted linear function x -> sum_i w_i x_i with positive weights.
class LinearProblem final : public BitProblem {
public:
    explicit LinearProblem(std::vector<double> weights);
    double evaluate(const BitString& x) const override;
    double evaluate_flipped(const BitString& parent, double parent_fitness,
                            std::span<const int> flips) const override;
    const std::vector<double>& weights() const { return weights_; }

private:
    std::vector<double> weights_;
};

std::vector<double> gen_random_linear_weights(int n, double low, double high, RandomSource& rng);

/// Undirected connected graph with integral edge weights in [1..w_max].
struct GraphInstance {
    int vertex_count = 0;
    struct Edge {
        int u, v;
        long long weight;
    };
    std::vector<Edge> edges;
    long long w_max = 1;

    int edge_count() const { return static_cast<int>(edges.size()); }
    bool connected() const;
};

/// Serialization: first line "nv m wmax", then one "u v w" line per edge,
/// vertices 1-indexed.
std::string serialize_graph(const GraphInstance& g);
GraphInstance parse_graph(std::istream& in);
GraphInstance parse_graph_string(const std::string& text);

/// Weight scheme for the connected-triangles generator: every triangle gets
/// two light edges and one heavy edge. The chapter does not fix the weights,
/// so they are parameters; heavy >= (1+epsilon) * light keeps the instance
/// epsilon-separated (default epsilon = 1).
struct TriangleWeights {
    long long light = 1;
    long long heavy = 2;
    int heavy_slot = 2; // triangle edges in slot order: (a,b), (a,c), (b,c)
};

GraphInstance gen_connected_triangles(int triangles, const TriangleWeights& weights);

/// Minimum spanning tree fitness of Neumann and Wegener (minimized):
/// M^2 (C_x - 1) + M (|selected| - (n_v - 1)) + sum of selected weights,
/// with M = n_v^2 w_max and C_x counting connected components (isolated
/// vertices included).
class MstProblem final : public BitProblem {
public:
    explicit MstProblem(GraphInstance graph);
    double evaluate(const BitString& x) const override;
    const GraphInstance& graph() const { return graph_; }
    long long penalty_m() const { return m_; }

private:
    GraphInstance graph_;
    long long m_;
};

/// Maximization view of a minimization problem (or vice versa) via negation;
/// used by Simulated Annealing, which maximizes.
class NegatedProblem final : public BitProblem {
public:
    explicit NegatedProblem(const BitProblem& inner);
    double evaluate(const BitString& x) const override;
    double evaluate_flipped(const BitString& parent, double parent_fitness,
                            std::span<const int> flips) const override;

private:
    const BitProblem& inner_;
};

/// r-valued problem over [0..r-1]^n, minimized.
class IntProblem {
public:
    virtual ~IntProblem() = default;

    int dimension() const { return n_; }
    int alphabet_size() const { return r_; }
    Direction direction() const { return Direction::Minimize; }
    double optimum() const { return 0.0; }
    const std::string& name() const { return name_; }
    BoundaryMode boundary_mode() const { return boundary_; }

    virtual double evaluate(const IntString& x) const = 0;
    /// Fitness after replacing coordinate `index` with `value`.
    virtual double evaluate_component_change(const IntString& x, double fitness, int index,
                                             std::int32_t value) const;
    bool is_optimal(double fitness) const { return fitness == 0.0; }

protected:
    IntProblem(std::string name, int n, int r, BoundaryMode boundary)
        : name_(std::move(name)), n_(n), r_(r), boundary_(boundary) {}

private:
    std::string name_;
    int n_;
    int r_;
    BoundaryMode boundary_;
};

/// The three r-valued OneMax generalizations (all minimized as distances):
/// mode 1 counts disagreeing positions, mode 2 sums interval distances,
/// mode 3 sums ring distances. Modes 1 and 2 clamp component steps at the
/// alphabet boundary; mode 3 wraps.
class RValuedOneMax final : public IntProblem {
public:
    RValuedOneMax(int n, int r, int mode, IntString target);
    static RValuedOneMax random_instance(int n, int r, int mode, RandomSource& rng);

    double evaluate(const IntString& x) const override;
    double evaluate_component_change(const IntString& x, double fitness, int index,
                                     std::int32_t value) const override;
    int mode() const { return mode_; }
    const IntString& target() const { return target_; }

private:
    double component_distance(std::int32_t xi, std::int32_t zi) const;
    int mode_;
    IntString target_;
};

} // namespace paramctl
