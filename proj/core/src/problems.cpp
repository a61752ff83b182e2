#include "paramctl/problems.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace paramctl {

double BitProblem::evaluate_flipped(const BitString& parent, double /*parent_fitness*/,
                                    std::span<const int> flips) const {
    BitString y = parent;
    apply_flips(y, flips);
    return evaluate(y);
}

// ---------------------------------------------------------------- OneMax

OneMaxProblem::OneMaxProblem(int n)
    : OneMaxProblem(n, BitString(static_cast<std::size_t>(n), 1)) {}

OneMaxProblem::OneMaxProblem(int n, BitString target)
    : BitProblem("onemax", n, Direction::Maximize, static_cast<double>(n)),
      target_(std::move(target)) {
    if (static_cast<int>(target_.size()) != n)
        throw std::invalid_argument("onemax: target length mismatch");
}

double OneMaxProblem::evaluate(const BitString& x) const {
    if (x.size() != target_.size()) throw std::invalid_argument("onemax: length mismatch");
    int agree = 0;
    for (std::size_t i = 0; i < x.size(); ++i) agree += (x[i] == target_[i]);
    return static_cast<double>(agree);
}

double OneMaxProblem::evaluate_flipped(const BitString& parent, double parent_fitness,
                                       std::span<const int> flips) const {
    int delta = 0;
    for (int q : flips)
        delta += (parent[static_cast<std::size_t>(q)] == target_[static_cast<std::size_t>(q)]) ? -1 : 1;
    return parent_fitness + delta;
}

// ----------------------------------------------------------- LeadingOnes

LOInstance canonical_lo_instance(int n) {
    LOInstance inst;
    inst.target.assign(static_cast<std::size_t>(n), 1);
    inst.sigma.resize(static_cast<std::size_t>(n));
    std::iota(inst.sigma.begin(), inst.sigma.end(), 0);
    return inst;
}

LOInstance gen_random_lo_instance(int n, RandomSource& rng) {
    LOInstance inst;
    inst.target = random_bitstring(n, rng);
    inst.sigma = rng.permutation(n);
    return inst;
}

LeadingOnesProblem::LeadingOnesProblem(int n)
    : LeadingOnesProblem(n, canonical_lo_instance(n)) {}

LeadingOnesProblem::LeadingOnesProblem(int n, LOInstance instance)
    : BitProblem("leadingones", n, Direction::Maximize, static_cast<double>(n)),
      inst_(std::move(instance)) {
    if (static_cast<int>(inst_.target.size()) != n || static_cast<int>(inst_.sigma.size()) != n)
        throw std::invalid_argument("leadingones: instance size mismatch");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    rank_.assign(static_cast<std::size_t>(n), 0);
    for (int slot = 0; slot < n; ++slot) {
        const int pos = inst_.sigma[static_cast<std::size_t>(slot)];
        if (pos < 0 || pos >= n || seen[static_cast<std::size_t>(pos)])
            throw std::invalid_argument("leadingones: sigma is not a permutation");
        seen[static_cast<std::size_t>(pos)] = 1;
        rank_[static_cast<std::size_t>(pos)] = slot + 1;
    }
}

double LeadingOnesProblem::evaluate(const BitString& x) const {
    if (x.size() != inst_.target.size())
        throw std::invalid_argument("leadingones: length mismatch");
    const int n = dimension();
    int len = 0;
    while (len < n) {
        const int pos = inst_.sigma[static_cast<std::size_t>(len)];
        if (x[static_cast<std::size_t>(pos)] != inst_.target[static_cast<std::size_t>(pos)]) break;
        ++len;
    }
    return static_cast<double>(len);
}

double LeadingOnesProblem::evaluate_flipped(const BitString& parent, double parent_fitness,
                                            std::span<const int> flips) const {
    if (flips.empty()) return parent_fitness;
    const int n = dimension();
    const int v = static_cast<int>(parent_fitness);
    int rmin = n + 1;
    for (int q : flips) rmin = std::min(rmin, rank_[static_cast<std::size_t>(q)]);
    if (rmin <= v) return static_cast<double>(rmin - 1); // an agreeing prefix slot broke
    if (rmin > v + 1) return parent_fitness;             // first disagreement untouched
    // The first disagreeing slot was flipped and now agrees; scan onward.
    if (static_cast<int>(mark_.size()) < n) mark_.assign(static_cast<std::size_t>(n), 0);
    ++epoch_;
    if (epoch_ == 0) {
        std::fill(mark_.begin(), mark_.end(), 0);
        epoch_ = 1;
    }
    for (int q : flips) mark_[static_cast<std::size_t>(q)] = epoch_;
    int len = v + 1;
    while (len < n) {
        const int pos = inst_.sigma[static_cast<std::size_t>(len)];
        std::uint8_t bit = parent[static_cast<std::size_t>(pos)];
        if (mark_[static_cast<std::size_t>(pos)] == epoch_) bit ^= 1u;
        if (bit != inst_.target[static_cast<std::size_t>(pos)]) break;
        ++len;
    }
    return static_cast<double>(len);
}

// ------------------------------------------------------------------ Jump

JumpProblem::JumpProblem(int n, int k)
    : BitProblem("jump", n, Direction::Maximize, static_cast<double>(n + k)), k_(k) {
    if (k < 1 || k > n) throw std::invalid_argument("jump: need 1 <= k <= n");
}

double JumpProblem::from_ones_count(int ones) const {
    const int n = dimension();
    if (ones <= n - k_ || ones == n) return static_cast<double>(k_ + ones);
    return static_cast<double>(n - ones);
}

int JumpProblem::ones_from_value(double v) const {
    const int n = dimension();
    const int value = static_cast<int>(v);
    if (value == n + k_) return n;
    if (value >= k_) return value - k_;
    return n - value;
}

double JumpProblem::evaluate(const BitString& x) const {
    if (static_cast<int>(x.size()) != dimension())
        throw std::invalid_argument("jump: length mismatch");
    int ones = 0;
    for (auto b : x) ones += b;
    return from_ones_count(ones);
}

double JumpProblem::evaluate_flipped(const BitString& parent, double parent_fitness,
                                     std::span<const int> flips) const {
    int ones = ones_from_value(parent_fitness);
    for (int q : flips) ones += parent[static_cast<std::size_t>(q)] ? -1 : 1;
    return from_ones_count(ones);
}

// --------------------------------------------------------------- Plateau

PlateauProblem::PlateauProblem(int n, int k)
    : BitProblem("plateau", n, Direction::Maximize, static_cast<double>(n)), k_(k) {
    if (k < 2 || k > n) throw std::invalid_argument("plateau: need 2 <= k <= n");
}

double PlateauProblem::from_ones_count(int ones) const {
    const int n = dimension();
    if (ones <= n - k_ || ones == n) return static_cast<double>(ones);
    return static_cast<double>(n - k_);
}

double PlateauProblem::evaluate(const BitString& x) const {
    if (static_cast<int>(x.size()) != dimension())
        throw std::invalid_argument("plateau: length mismatch");
    int ones = 0;
    for (auto b : x) ones += b;
    return from_ones_count(ones);
}

// ---------------------------------------------------------------- Linear

LinearProblem::LinearProblem(std::vector<double> weights)
    : BitProblem("linear", static_cast<int>(weights.size()), Direction::Maximize,
                 std::accumulate(weights.begin(), weights.end(), 0.0)),
      weights_(std::move(weights)) {
    for (double w : weights_)
        if (w < 0.0) throw std::invalid_argument("linear: weights must be nonnegative");
}

double LinearProblem::evaluate(const BitString& x) const {
    if (x.size() != weights_.size()) throw std::invalid_argument("linear: length mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i]) sum += weights_[i];
    return sum;
}

double LinearProblem::evaluate_flipped(const BitString& parent, double parent_fitness,
                                       std::span<const int> flips) const {
    double f = parent_fitness;
    for (int q : flips) {
        const double w = weights_[static_cast<std::size_t>(q)];
        f += parent[static_cast<std::size_t>(q)] ? -w : w;
    }
    return f;
}

std::vector<double> gen_random_linear_weights(int n, double low, double high, RandomSource& rng) {
    if (low >= high) throw std::invalid_argument("linear weights: need low < high");
    std::vector<double> w(static_cast<std::size_t>(n));
    for (auto& wi : w) wi = low + (high - low) * rng.next_real();
    return w;
}

// ----------------------------------------------------------------- Graph

namespace {

struct UnionFind {
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[static_cast<std::size_t>(a)] = b;
        return true;
    }
    std::vector<int> parent;
};

} // namespace

bool GraphInstance::connected() const {
    if (vertex_count <= 1) return true;
    UnionFind uf(vertex_count);
    int components = vertex_count;
    for (const auto& e : edges)
        if (uf.unite(e.u, e.v)) --components;
    return components == 1;
}

std::string serialize_graph(const GraphInstance& g) {
    std::ostringstream out;
    out << g.vertex_count << ' ' << g.edge_count() << ' ' << g.w_max << '\n';
    for (const auto& e : g.edges) out << (e.u + 1) << ' ' << (e.v + 1) << ' ' << e.weight << '\n';
    return out.str();
}

GraphInstance parse_graph(std::istream& in) {
    GraphInstance g;
    int m = 0;
    if (!(in >> g.vertex_count >> m >> g.w_max))
        throw std::invalid_argument("graph: malformed header line");
    g.edges.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        GraphInstance::Edge e{};
        if (!(in >> e.u >> e.v >> e.weight))
            throw std::invalid_argument("graph: malformed edge line");
        if (e.u < 1 || e.u > g.vertex_count || e.v < 1 || e.v > g.vertex_count)
            throw std::invalid_argument("graph: vertex index out of range");
        if (e.weight < 1 || e.weight > g.w_max)
            throw std::invalid_argument("graph: edge weight outside [1..wmax]");
        e.u -= 1;
        e.v -= 1;
        g.edges.push_back(e);
    }
    return g;
}

GraphInstance parse_graph_string(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

GraphInstance gen_connected_triangles(int triangles, const TriangleWeights& weights) {
    if (triangles < 1) throw std::invalid_argument("connected triangles: need t >= 1");
    if (weights.light < 1 || weights.heavy < weights.light)
        throw std::invalid_argument("connected triangles: need 1 <= light <= heavy");
    if (weights.heavy_slot < 0 || weights.heavy_slot > 2)
        throw std::invalid_argument("connected triangles: heavy_slot in {0,1,2}");
    GraphInstance g;
    g.vertex_count = 2 * triangles + 1;
    g.w_max = weights.heavy;
    for (int i = 0; i < triangles; ++i) {
        const int a = 2 * i, b = 2 * i + 1, c = 2 * i + 2;
        const int pairs[3][2] = {{a, b}, {a, c}, {b, c}};
        for (int slot = 0; slot < 3; ++slot) {
            g.edges.push_back({pairs[slot][0], pairs[slot][1],
                               slot == weights.heavy_slot ? weights.heavy : weights.light});
        }
    }
    return g;
}

// ------------------------------------------------------------------- MST

namespace {

// Kruskal; a spanning tree's fitness has both penalty terms zero, so the
// minimum spanning tree weight is the optimum of the fitness below.
long long minimum_spanning_weight(const GraphInstance& g) {
    if (!g.connected()) throw std::invalid_argument("mst: graph must be connected");
    std::vector<int> order(g.edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return g.edges[static_cast<std::size_t>(a)].weight <
               g.edges[static_cast<std::size_t>(b)].weight;
    });
    UnionFind uf(g.vertex_count);
    long long total = 0;
    for (int idx : order) {
        const auto& e = g.edges[static_cast<std::size_t>(idx)];
        if (uf.unite(e.u, e.v)) total += e.weight;
    }
    return total;
}

} // namespace

MstProblem::MstProblem(GraphInstance graph)
    : BitProblem("mst", graph.edge_count(), Direction::Minimize,
                 static_cast<double>(minimum_spanning_weight(graph))),
      graph_(std::move(graph)) {
    m_ = static_cast<long long>(graph_.vertex_count) * graph_.vertex_count * graph_.w_max;
}

double MstProblem::evaluate(const BitString& x) const {
    if (static_cast<int>(x.size()) != graph_.edge_count())
        throw std::invalid_argument("mst: selection length mismatch");
    UnionFind uf(graph_.vertex_count);
    int components = graph_.vertex_count;
    long long selected = 0;
    long long weight = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!x[i]) continue;
        const auto& e = graph_.edges[i];
        ++selected;
        weight += e.weight;
        if (uf.unite(e.u, e.v)) --components;
    }
    const long long nv = graph_.vertex_count;
    return static_cast<double>(m_) * static_cast<double>(m_) * static_cast<double>(components - 1) +
           static_cast<double>(m_) * static_cast<double>(selected - (nv - 1)) +
           static_cast<double>(weight);
}

// --------------------------------------------------------------- Negated

NegatedProblem::NegatedProblem(const BitProblem& inner)
    : BitProblem("neg-" + inner.name(), inner.dimension(),
                 inner.direction() == Direction::Maximize ? Direction::Minimize
                                                          : Direction::Maximize,
                 -inner.optimum()),
      inner_(inner) {}

double NegatedProblem::evaluate(const BitString& x) const { return -inner_.evaluate(x); }

double NegatedProblem::evaluate_flipped(const BitString& parent, double parent_fitness,
                                        std::span<const int> flips) const {
    return -inner_.evaluate_flipped(parent, -parent_fitness, flips);
}

// ------------------------------------------------------------ IntProblem

double IntProblem::evaluate_component_change(const IntString& x, double /*fitness*/, int index,
                                             std::int32_t value) const {
    IntString y = x;
    y[static_cast<std::size_t>(index)] = value;
    return evaluate(y);
}

RValuedOneMax::RValuedOneMax(int n, int r, int mode, IntString target)
    : IntProblem("rvalued-onemax", n, r, mode == 3 ? BoundaryMode::Wrap : BoundaryMode::Clamp),
      mode_(mode), target_(std::move(target)) {
    if (mode < 1 || mode > 3) throw std::invalid_argument("rvalued onemax: mode must be 1, 2, or 3");
    if (r < 2) throw std::invalid_argument("rvalued onemax: alphabet size must be >= 2");
    if (static_cast<int>(target_.size()) != n)
        throw std::invalid_argument("rvalued onemax: target length mismatch");
    for (auto z : target_)
        if (z < 0 || z >= r) throw std::invalid_argument("rvalued onemax: target entry out of range");
}

RValuedOneMax RValuedOneMax::random_instance(int n, int r, int mode, RandomSource& rng) {
    return RValuedOneMax(n, r, mode, random_intstring(n, r, rng));
}

double RValuedOneMax::component_distance(std::int32_t xi, std::int32_t zi) const {
    switch (mode_) {
    case 1:
        return xi == zi ? 0.0 : 1.0;
    case 2:
        return static_cast<double>(std::abs(xi - zi));
    default: {
        const int d = std::abs(xi - zi);
        return static_cast<double>(std::min(d, alphabet_size() - d));
    }
    }
}

double RValuedOneMax::evaluate(const IntString& x) const {
    if (x.size() != target_.size()) throw std::invalid_argument("rvalued onemax: length mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) total += component_distance(x[i], target_[i]);
    return total;
}

double RValuedOneMax::evaluate_component_change(const IntString& x, double fitness, int index,
                                                std::int32_t value) const {
    const auto i = static_cast<std::size_t>(index);
    return fitness - component_distance(x[i], target_[i]) + component_distance(value, target_[i]);
}

} // namespace paramctl
