#include "bo/flow_certify.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace bo {

namespace {

using Rational = boost::multiprecision::cpp_rational;

// Dinic over exact rational capacities.  Tiny graphs only.
class RationalMaxFlow {
public:
    explicit RationalMaxFlow(int nodes) : graph_(static_cast<std::size_t>(nodes)) {}

    int add_edge(int from, int to, Rational cap) {
        int id = static_cast<int>(edges_.size());
        graph_[static_cast<std::size_t>(from)].push_back(id);
        edges_.push_back({to, std::move(cap), Rational(0)});
        graph_[static_cast<std::size_t>(to)].push_back(id + 1);
        edges_.push_back({from, Rational(0), Rational(0)});
        return id;
    }

    Rational max_flow(int source, int sink) {
        Rational total(0);
        while (bfs(source, sink)) {
            iter_.assign(graph_.size(), 0);
            for (;;) {
                Rational pushed = dfs(source, sink, Rational(-1));
                if (pushed == 0) break;
                total += pushed;
            }
        }
        return total;
    }

    Rational flow_on(int edge_id) const { return edges_[static_cast<std::size_t>(edge_id)].flow; }

    std::vector<char> source_side(int source) const {
        std::vector<char> seen(graph_.size(), 0);
        std::queue<int> q;
        q.push(source);
        seen[static_cast<std::size_t>(source)] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int id : graph_[static_cast<std::size_t>(v)]) {
                const Edge& e = edges_[static_cast<std::size_t>(id)];
                if (e.cap - e.flow > 0 && !seen[static_cast<std::size_t>(e.to)]) {
                    seen[static_cast<std::size_t>(e.to)] = 1;
                    q.push(e.to);
                }
            }
        }
        return seen;
    }

private:
    struct Edge {
        int to;
        Rational cap;
        Rational flow;
    };

    bool bfs(int source, int sink) {
        level_.assign(graph_.size(), -1);
        std::queue<int> q;
        q.push(source);
        level_[static_cast<std::size_t>(source)] = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int id : graph_[static_cast<std::size_t>(v)]) {
                const Edge& e = edges_[static_cast<std::size_t>(id)];
                if (e.cap - e.flow > 0 && level_[static_cast<std::size_t>(e.to)] < 0) {
                    level_[static_cast<std::size_t>(e.to)] = level_[static_cast<std::size_t>(v)] + 1;
                    q.push(e.to);
                }
            }
        }
        return level_[static_cast<std::size_t>(sink)] >= 0;
    }

    Rational dfs(int v, int sink, Rational limit) {
        if (v == sink) return limit;
        for (auto& i = iter_[static_cast<std::size_t>(v)];
             i < static_cast<int>(graph_[static_cast<std::size_t>(v)].size()); ++i) {
            int id = graph_[static_cast<std::size_t>(v)][static_cast<std::size_t>(i)];
            Edge& e = edges_[static_cast<std::size_t>(id)];
            Edge& back = edges_[static_cast<std::size_t>(id ^ 1)];
            Rational residual = e.cap - e.flow;
            if (residual <= 0) continue;
            if (level_[static_cast<std::size_t>(e.to)] != level_[static_cast<std::size_t>(v)] + 1)
                continue;
            Rational pass = (limit < 0 || residual < limit) ? residual : limit;
            Rational pushed = dfs(e.to, sink, pass);
            if (pushed > 0) {
                e.flow += pushed;
                back.flow -= pushed;
                return pushed;
            }
        }
        return Rational(0);
    }

    std::vector<std::vector<int>> graph_;
    std::vector<Edge> edges_;
    std::vector<int> level_;
    std::vector<int> iter_;
};

// Whole-atom witness assignment: balls by increasing measure, atoms by how
// few still-unsatisfied balls want them.
std::optional<std::map<BallId, AtomSet>> extract_witnesses(const BallBasis& basis,
                                                           const std::vector<BallId>& balls,
                                                           const std::vector<Rational>& demand) {
    const int n = basis.space().atom_count();
    std::vector<int> order(balls.size());
    for (std::size_t i = 0; i < balls.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        double mx = basis.ball(balls[static_cast<std::size_t>(x)]).measure;
        double my = basis.ball(balls[static_cast<std::size_t>(y)]).measure;
        if (mx != my) return mx < my;
        return balls[static_cast<std::size_t>(x)] < balls[static_cast<std::size_t>(y)];
    });

    std::vector<int> wanted_by(static_cast<std::size_t>(n), 0);
    for (BallId id : balls)
        for (AtomId a : basis.ball(id).atoms) ++wanted_by[static_cast<std::size_t>(a)];

    std::vector<char> taken(static_cast<std::size_t>(n), 0);
    std::map<BallId, AtomSet> witnesses;
    for (int idx : order) {
        BallId id = balls[static_cast<std::size_t>(idx)];
        const Ball& b = basis.ball(id);
        for (AtomId a : b.atoms) --wanted_by[static_cast<std::size_t>(a)];

        std::vector<AtomId> candidates;
        for (AtomId a : b.atoms)
            if (!taken[static_cast<std::size_t>(a)]) candidates.push_back(a);
        std::sort(candidates.begin(), candidates.end(), [&](AtomId x, AtomId y) {
            int wx = wanted_by[static_cast<std::size_t>(x)], wy = wanted_by[static_cast<std::size_t>(y)];
            if (wx != wy) return wx < wy;
            double mx = basis.space().mass(x), my = basis.space().mass(y);
            if (mx != my) return mx > my;
            return x < y;
        });

        Rational need = demand[static_cast<std::size_t>(idx)];
        Rational got(0);
        AtomSet e;
        for (AtomId a : candidates) {
            if (got >= need) break;
            got += Rational(basis.space().mass(a));
            e.push_back(a);
            taken[static_cast<std::size_t>(a)] = 1;
        }
        if (got < need) return std::nullopt;
        witnesses[id] = make_atom_set(std::move(e));
    }
    return witnesses;
}

} // namespace

SparseCertification certify_sparse(const BallBasis& basis, std::vector<BallId> balls,
                                   double gamma) {
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw std::invalid_argument("certify_sparse: gamma must lie in (0, 1]");
    std::sort(balls.begin(), balls.end());
    balls.erase(std::unique(balls.begin(), balls.end()), balls.end());
    for (BallId id : balls)
        if (id < 0 || id >= basis.ball_count())
            throw std::invalid_argument("certify_sparse: unknown ball id");

    SparseCertification cert;
    if (balls.empty()) {
        cert.feasible = true;
        SparseCollection sc;
        sc.gamma = gamma;
        cert.collection = std::move(sc);
        return cert;
    }

    const int n = basis.space().atom_count();
    const int ball_count = static_cast<int>(balls.size());
    const int source = 0;
    const int sink = 1 + ball_count + n;
    RationalMaxFlow flow(sink + 1);

    const Rational gamma_q(gamma);
    Rational total_demand(0);
    std::vector<Rational> demand(balls.size());
    Rational big(basis.space().total_mass());
    big += 1;
    for (int i = 0; i < ball_count; ++i) {
        const Ball& b = basis.ball(balls[static_cast<std::size_t>(i)]);
        Rational mu(0);
        for (AtomId a : b.atoms) mu += Rational(basis.space().mass(a));
        demand[static_cast<std::size_t>(i)] = gamma_q * mu;
        total_demand += demand[static_cast<std::size_t>(i)];
        flow.add_edge(source, 1 + i, demand[static_cast<std::size_t>(i)]);
        for (AtomId a : b.atoms) flow.add_edge(1 + i, 1 + ball_count + a, big);
    }
    for (AtomId a = 0; a < n; ++a)
        flow.add_edge(1 + ball_count + a, sink, Rational(basis.space().mass(a)));

    Rational reached = flow.max_flow(source, sink);
    cert.feasible = (reached == total_demand);

    if (!cert.feasible) {
        std::vector<char> side = flow.source_side(source);
        SparsityDeficiency d;
        Rational dem(0), sup(0);
        AtomSet atoms;
        for (int i = 0; i < ball_count; ++i)
            if (side[static_cast<std::size_t>(1 + i)]) {
                d.balls.push_back(balls[static_cast<std::size_t>(i)]);
                dem += demand[static_cast<std::size_t>(i)];
                for (AtomId a : basis.ball(balls[static_cast<std::size_t>(i)]).atoms)
                    atoms.push_back(a);
            }
        d.atoms = make_atom_set(std::move(atoms));
        for (AtomId a : d.atoms) sup += Rational(basis.space().mass(a));
        d.demand = static_cast<double>(dem);
        d.supply = static_cast<double>(sup);
        cert.deficiency = std::move(d);
        return cert;
    }

    auto witnesses = extract_witnesses(basis, balls, demand);
    if (!witnesses) {
        cert.extraction_failed = true;
        return cert;
    }
    SparseCollection sc;
    sc.balls = balls;
    sc.witnesses = std::move(*witnesses);
    sc.gamma = gamma;
    if (!sc.witnesses_valid(basis)) {
        cert.extraction_failed = true;
        return cert;
    }
    cert.collection = std::move(sc);
    return cert;
}

double best_certified_gamma(const BallBasis& basis, const std::vector<BallId>& balls,
                            double resolution) {
    if (balls.empty()) return 1.0;
    double lo = 0.0, hi = 1.0;
    if (certify_sparse(basis, balls, 1.0).collection) return 1.0;
    while (hi - lo > resolution) {
        double mid = 0.5 * (lo + hi);
        if (mid <= 0.0) break;
        if (certify_sparse(basis, balls, mid).collection) lo = mid;
        else hi = mid;
    }
    return lo;
}

} // namespace bo
