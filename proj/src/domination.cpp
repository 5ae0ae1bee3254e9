#include "bo/domination.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "bo/norms.hpp"
#include "bo/operators.hpp"

namespace bo {

namespace {

constexpr int kMaxTreeNodes = 20000;

bool same_atoms(const BallBasis& basis, BallId a, BallId b) {
    return basis.ball(a).atoms == basis.ball(b).atoms;
}

} // namespace

BallId chain_extend(const BallBasis& basis, BallId b) {
    const BallId whole = basis.whole_space_id();
    if (same_atoms(basis, b, whole))
        throw std::invalid_argument("chain_extend: cannot extend the whole space");
    const Ball& ball_b = basis.ball(b);
    const double k = basis.K();

    BallId result = -1;
    if (basis.hull(b) == b || same_atoms(basis, basis.hull(b), b)) {
        // Fixed-point hull: take the minimal strict superset.
        double best = std::numeric_limits<double>::infinity();
        for (const Ball& s : basis.balls()) {
            if (s.atoms.size() <= ball_b.atoms.size() || !is_subset(ball_b.atoms, s.atoms)) continue;
            if (s.measure < best || (s.measure == best && s.id < result)) {
                best = s.measure;
                result = s.id;
            }
        }
        if (result < 0) throw std::logic_error("chain_extend: no strict superset found");
    } else {
        double a = ball_b.measure;
        BallId a_witness = b;
        double bb = std::numeric_limits<double>::infinity();
        BallId b_witness = -1;
        for (const Ball& s : basis.balls()) {
            if (!sets_intersect(s.atoms, ball_b.atoms)) continue;
            if (s.measure >= ball_b.measure && s.measure <= 2.0 * ball_b.measure) {
                if (s.measure > a || (s.measure == a && s.id < a_witness)) {
                    a = s.measure;
                    a_witness = s.id;
                }
            } else if (s.measure > 2.0 * ball_b.measure) {
                if (s.measure < bb || (s.measure == bb && s.id < b_witness)) {
                    bb = s.measure;
                    b_witness = s.id;
                }
            }
        }
        if (b_witness < 0) {
            result = whole;
        } else if (bb <= k * k * a) {
            result = basis.hull_level(b_witness, 3);
        } else {
            result = basis.hull_level(a_witness, 1);
        }
    }

    // Enlarge along hulls until the second hull of b is contained; the whole
    // space is the terminal fallback.
    const AtomSet& b2 = basis.ball(basis.hull_level(b, 2)).atoms;
    for (;;) {
        if (is_subset(b2, basis.ball(result).atoms)) break;
        BallId next = basis.hull(result);
        if (next == result || same_atoms(basis, next, result)) {
            result = whole;
            break;
        }
        result = next;
    }
    return result;
}

std::vector<BallId> chain_to_whole_space(const BallBasis& basis, BallId b) {
    std::vector<BallId> chain{b};
    const BallId whole = basis.whole_space_id();
    while (!same_atoms(basis, chain.back(), whole)) {
        chain.push_back(chain_extend(basis, chain.back()));
        if (chain.size() > 4 * basis.balls().size() + 8)
            throw std::logic_error("chain_to_whole_space: chain failed to terminate");
    }
    return chain;
}

int rank_of(double mu, double rank_base) {
    int k = static_cast<int>(std::floor(std::log(mu) / std::log(rank_base)));
    while (std::pow(rank_base, k + 1) <= mu) ++k;
    while (std::pow(rank_base, k) > mu) --k;
    return k;
}

FamilyTree build_family_tree(const std::shared_ptr<const SublinearOperator>& op,
                             const std::shared_ptr<const BallBasis>& basis, const Function& f,
                             BallId b, double r, double lambda, const BOConstants& constants) {
    const MeasureSpace& space = basis->space();
    const double k = basis->K();
    if (lambda + 1e-9 < 3.0 * k * k * k * k)
        throw std::invalid_argument("build_family_tree: lambda must be at least 3 K^4");

    FamilyTree tree;
    tree.lambda = lambda;
    tree.script_l = constants.total();
    tree.rank_base = (k > 1.0 + 1e-9) ? k * k : 2.0;

    // Root: minimal ball containing hull(b) holding more than half the mass of f.
    double f_l1 = 0.0;
    for (AtomId a = 0; a < space.atom_count(); ++a) f_l1 += std::abs(f[a]) * space.mass(a);
    if (f_l1 <= 0.0)
        throw std::invalid_argument("build_family_tree: f vanishes identically");
    const AtomSet& hull_b = basis->ball(basis->hull(b)).atoms;
    BallId root_ball = basis->whole_space_id();
    {
        std::vector<BallId> candidates;
        for (const Ball& s : basis->balls())
            if (is_subset(hull_b, s.atoms)) candidates.push_back(s.id);
        std::sort(candidates.begin(), candidates.end(), [&](BallId x, BallId y) {
            double mx = basis->ball(x).measure, my = basis->ball(y).measure;
            if (mx != my) return mx < my;
            return x < y;
        });
        for (BallId id : candidates) {
            double mass = 0.0;
            for (AtomId a : basis->ball(id).atoms) mass += std::abs(f[a]) * space.mass(a);
            if (mass > 0.5 * f_l1) {
                root_ball = id;
                break;
            }
        }
    }

    auto star = t_star(op, basis);
    MaximalOperator maximal(basis, r);
    const double script_l = tree.script_l;

    FamilyTreeNode root;
    root.ball = root_ball;
    root.rank = rank_of(basis->ball(root_ball).measure, tree.rank_base);
    tree.nodes.push_back(root);

    std::vector<int> queue{0};
    while (!queue.empty()) {
        int node_index = queue.back();
        queue.pop_back();
        FamilyTreeNode node = tree.nodes[static_cast<std::size_t>(node_index)];
        const Ball& a_ball = basis->ball(node.ball);
        const AtomSet& a1 = basis->ball(basis->hull(node.ball)).atoms;
        const AtomSet& a3 = basis->ball(basis->hull_level(node.ball, 3)).atoms;

        Function f_a = (node_index == 0) ? f : f.masked(a3);
        const double threshold_base = avg(space, f, a3, r);

        double beta = 2.0 * script_l * lambda;
        if (beta <= 0.0) beta = 2.0 * lambda;
        AtomSet stopping;
        if (threshold_base > 0.0) {
            Function tf = op->apply(f_a);
            Function tsf = star->apply(f_a);
            Function mf = maximal.apply(f_a);
            std::vector<double> gamma_vals(static_cast<std::size_t>(space.atom_count()));
            for (AtomId x = 0; x < space.atom_count(); ++x)
                gamma_vals[static_cast<std::size_t>(x)] =
                    std::max({std::abs(tf[x]), tsf[x], script_l * mf[x]});
            for (;;) {
                stopping.clear();
                for (AtomId x = 0; x < space.atom_count(); ++x)
                    if (gamma_vals[static_cast<std::size_t>(x)] > beta * threshold_base)
                        stopping.push_back(x);
                if (space.measure(stopping) <= a_ball.measure / lambda + 1e-15) break;
                beta *= 2.0;
                if (beta > 1e300) {
                    stopping.clear();
                    break;
                }
            }
        }
        tree.nodes[static_cast<std::size_t>(node_index)].stopping_set = stopping;
        tree.nodes[static_cast<std::size_t>(node_index)].beta = beta;
        tree.beta_max = std::max(tree.beta_max, beta);

        AtomSet to_cover = set_intersection_of(stopping, a1);
        if (to_cover.empty()) continue;

        std::vector<BallId> cover = economical_cover(*basis, to_cover);
        std::vector<BallId> child_balls;
        std::vector<std::pair<BallId, AtomId>> child_meta; // companion, witness point
        for (BallId p : cover) {
            std::vector<BallId> chain;
            if (same_atoms(*basis, p, basis->whole_space_id())) chain = {basis->whole_space_id()};
            else chain = chain_to_whole_space(*basis, p);
            auto link = [&](std::size_t i) {
                return chain[std::min(i, chain.size() - 1)];
            };
            std::size_t m = 0;
            for (;; ++m) {
                const AtomSet& next_hull = basis->ball(basis->hull(link(m + 1))).atoms;
                if (!is_subset(next_hull, stopping)) break;
                if (m > chain.size() + 2)
                    throw std::logic_error("build_family_tree: chain stop rule did not trigger");
            }
            BallId g = link(m);
            BallId next = link(m + 1);
            BallId next_hull_ball = basis->hull(next);
            BallId companion = (basis->ball(next_hull_ball).measure > a_ball.measure)
                                   ? basis->hull(node.ball)
                                   : next_hull_ball;
            AtomSet free_atoms =
                set_difference_of(basis->ball(companion).atoms, stopping);
            if (free_atoms.empty())
                throw std::logic_error("build_family_tree: companion fully inside stopping set");
            bool duplicate = false;
            for (BallId existing : child_balls)
                if (existing == g) duplicate = true;
            if (duplicate) continue;
            if (basis->ball(g).measure >= a_ball.measure)
                throw std::logic_error("build_family_tree: child does not shrink");
            child_balls.push_back(g);
            child_meta.emplace_back(companion, free_atoms.front());
        }

        for (std::size_t i = 0; i < child_balls.size(); ++i) {
            FamilyTreeNode child;
            child.ball = child_balls[i];
            child.parent = node_index;
            child.rank = rank_of(basis->ball(child.ball).measure, tree.rank_base);
            child.companion = child_meta[i].first;
            child.witness_point = child_meta[i].second;
            int child_index = tree.size();
            if (child_index >= kMaxTreeNodes)
                throw std::logic_error("build_family_tree: node cap exceeded (non-terminating recursion?)");
            tree.nodes.push_back(child);
            tree.nodes[static_cast<std::size_t>(node_index)].children.push_back(child_index);
            queue.push_back(child_index);
        }
    }
    return tree;
}

PruneResult prune_tree(const FamilyTree& tree, const BallBasis& basis) {
    PruneResult result;
    const int count = tree.size();
    std::vector<char> removed(static_cast<std::size_t>(count), 0);

    auto remove_subtree = [&](int node) {
        std::vector<int> stack{node};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (removed[static_cast<std::size_t>(v)]) continue;
            removed[static_cast<std::size_t>(v)] = 1;
            for (int c : tree.nodes[static_cast<std::size_t>(v)].children) stack.push_back(c);
        }
    };

    int min_rank = tree.nodes.front().rank;
    for (const auto& node : tree.nodes) min_rank = std::min(min_rank, node.rank);
    const int top_rank = tree.nodes.front().rank;

    for (int stage_rank = top_rank - 1; stage_rank >= min_rank; --stage_rank) {
        // Interleaved-rank removal against the currently retained family.
        for (int g = 0; g < count; ++g) {
            if (removed[static_cast<std::size_t>(g)]) continue;
            const auto& node = tree.nodes[static_cast<std::size_t>(g)];
            if (node.rank != stage_rank || node.parent < 0) continue;
            const int parent_rank = tree.nodes[static_cast<std::size_t>(node.parent)].rank;
            const AtomSet& g2 = basis.ball(basis.hull_level(node.ball, 2)).atoms;
            bool drop = false;
            for (int other = 0; other < count && !drop; ++other) {
                if (removed[static_cast<std::size_t>(other)] || other == g) continue;
                const int rank_b = tree.nodes[static_cast<std::size_t>(other)].rank;
                if (!(node.rank < rank_b - 1 && rank_b < parent_rank - 1)) continue;
                if (sets_intersect(g2, basis.ball(tree.nodes[static_cast<std::size_t>(other)].ball).atoms))
                    drop = true;
            }
            if (drop) {
                remove_subtree(g);
                ++result.removed_by_interleave;
            }
        }

        // Greedy disjoint thinning of the rank class.
        std::vector<int> cls;
        for (int g = 0; g < count; ++g)
            if (!removed[static_cast<std::size_t>(g)] &&
                tree.nodes[static_cast<std::size_t>(g)].rank == stage_rank && g != 0)
                cls.push_back(g);
        if (cls.size() > 1) {
            std::vector<char> chosen(cls.size(), 0);
            AtomSet chosen_union;
            for (;;) {
                int best = -1;
                for (std::size_t i = 0; i < cls.size(); ++i) {
                    if (chosen[i]) continue;
                    const Ball& ball = basis.ball(tree.nodes[static_cast<std::size_t>(cls[i])].ball);
                    if (sets_intersect(ball.atoms, chosen_union)) continue;
                    if (best < 0 ||
                        ball.measure >
                            basis.ball(tree.nodes[static_cast<std::size_t>(cls[static_cast<std::size_t>(best)])].ball).measure)
                        best = static_cast<int>(i);
                }
                if (best < 0) break;
                chosen[static_cast<std::size_t>(best)] = 1;
                chosen_union = set_union_of(
                    chosen_union,
                    basis.ball(tree.nodes[static_cast<std::size_t>(cls[static_cast<std::size_t>(best)])].ball).atoms);
            }
            for (std::size_t i = 0; i < cls.size(); ++i)
                if (!chosen[i] && !removed[static_cast<std::size_t>(cls[i])]) {
                    remove_subtree(cls[i]);
                    ++result.removed_by_disjointing;
                }
        }
    }

    for (int g = 0; g < count; ++g)
        if (!removed[static_cast<std::size_t>(g)]) result.retained.push_back(g);
    return result;
}

std::map<int, AtomSet> exclusion_sets(const FamilyTree& tree, const BallBasis& basis,
                                      const std::vector<int>& retained) {
    std::map<int, AtomSet> out;
    for (int a : retained) {
        const auto& node = tree.nodes[static_cast<std::size_t>(a)];
        AtomSet cut;
        for (int g : retained) {
            if (g == a) continue;
            const auto& other = tree.nodes[static_cast<std::size_t>(g)];
            if (other.rank < node.rank - 1)
                cut = set_union_of(cut, basis.ball(other.ball).atoms);
        }
        out[a] = set_difference_of(basis.ball(node.ball).atoms, cut);
    }
    return out;
}

DominationResult verify_domination(const SublinearOperator& op, const BallBasis& basis,
                                   const SparseCollection& s, const Function& f, double r,
                                   const AtomSet* atoms) {
    DominationResult result;
    Function tf = op.apply(f);
    Function af = sparse_apply(basis, s, f, r);
    AtomSet all = atoms ? *atoms : basis.space().all_atoms();
    const double tiny = 1e-13;
    for (AtomId x : all) {
        double num = std::abs(tf[x]);
        double den = af[x];
        if (den <= tiny) {
            if (num > tiny) {
                result.ok = false;
                result.failure_witness = x;
                return result;
            }
            continue;
        }
        result.constant = std::max(result.constant, num / den);
    }
    return result;
}

namespace {

SparseCollection lift_family(const FamilyTree& tree, const BallBasis& basis,
                             const std::vector<int>& nodes, const std::map<int, AtomSet>& exclusion) {
    SparseCollection family;
    std::map<BallId, AtomSet> merged;
    for (int n : nodes) {
        BallId lifted = basis.hull_level(tree.nodes[static_cast<std::size_t>(n)].ball, 3);
        const AtomSet& e = exclusion.at(n);
        auto [it, fresh] = merged.emplace(lifted, e);
        if (!fresh) it->second = set_union_of(it->second, e);
    }
    double gamma = 1.0;
    for (auto& [ball, e] : merged) {
        family.balls.push_back(ball);
        gamma = std::min(gamma, basis.space().measure(e) / basis.ball(ball).measure);
        family.witnesses[ball] = e;
    }
    family.gamma = gamma;
    return family;
}

} // namespace

Theorem1Result theorem1_sparse(const std::shared_ptr<const SublinearOperator>& op,
                               const std::shared_ptr<const BallBasis>& basis, const Function& f,
                               BallId b, double r, double lambda, const BOConstants& constants) {
    Theorem1Result result;

    if (f.max_abs() == 0.0) {
        BallId whole = basis->whole_space_id();
        result.combined.balls = {whole};
        result.combined.witnesses[whole] = basis->ball(whole).atoms;
        result.combined.gamma = 1.0;
        result.family_odd_rank = result.combined;
        result.gamma_reported = 1.0;
        result.families_certified = true;
        result.tree_size = result.pruned_size = 0;
        return result;
    }

    result.tree = build_family_tree(op, basis, f, b, r, lambda, constants);
    PruneResult pruned = prune_tree(result.tree, *basis);
    result.retained = pruned.retained;
    result.tree_size = result.tree.size();
    result.pruned_size = static_cast<int>(pruned.retained.size());
    result.beta_final = result.tree.beta_max;

    auto exclusion = exclusion_sets(result.tree, *basis, pruned.retained);
    std::vector<int> odd, even;
    for (int n : pruned.retained) {
        int rank = result.tree.nodes[static_cast<std::size_t>(n)].rank;
        // Guard negative ranks: parity by mathematical mod.
        if (((rank % 2) + 2) % 2 == 1) odd.push_back(n);
        else even.push_back(n);
    }
    result.family_odd_rank = lift_family(result.tree, *basis, odd, exclusion);
    result.family_even_rank = lift_family(result.tree, *basis, even, exclusion);

    double gamma = 1.0;
    if (!result.family_odd_rank.balls.empty()) gamma = std::min(gamma, result.family_odd_rank.gamma);
    if (!result.family_even_rank.balls.empty())
        gamma = std::min(gamma, result.family_even_rank.gamma);
    result.gamma_reported = gamma;

    auto cert_odd = certify_sparse(*basis, result.family_odd_rank.balls, gamma);
    auto cert_even = certify_sparse(*basis, result.family_even_rank.balls, gamma);
    result.families_certified = cert_odd.collection.has_value() && cert_even.collection.has_value();

    result.combined.balls = result.family_odd_rank.balls;
    for (BallId id : result.family_even_rank.balls) result.combined.balls.push_back(id);
    std::sort(result.combined.balls.begin(), result.combined.balls.end());
    result.combined.balls.erase(
        std::unique(result.combined.balls.begin(), result.combined.balls.end()),
        result.combined.balls.end());
    result.combined.gamma = gamma;
    result.combined.parity_split = {result.family_odd_rank.balls, result.family_even_rank.balls};

    const AtomSet& domain = basis->ball(result.tree.root().ball).atoms;
    DominationResult dom = verify_domination(*op, *basis, result.combined, f, r, &domain);
    if (!dom.ok) {
        std::ostringstream os;
        os << "theorem1_sparse: domination failed at atom " << dom.failure_witness
           << " (sparse value vanishes where Tf does not)";
        throw std::logic_error(os.str());
    }
    result.domination_constant = dom.constant;
    return result;
}

SparseCollection oracle_dyadic_sparse(const TreeBasis& tree, const Function& f, double r) {
    const BallBasis& basis = tree.basis();
    const MeasureSpace& space = basis.space();
    check_same_size(space, f);

    SparseCollection s;
    s.gamma = 0.5;
    std::vector<std::pair<BallId, double>> stack; // node, nearest selected average
    double root_avg = avg(space, f, basis.ball(tree.root()).atoms, r);
    s.balls.push_back(tree.root());
    std::map<BallId, std::vector<BallId>> selected_children; // nearest selected -> nodes
    for (BallId c : tree.children(tree.root())) stack.emplace_back(c, root_avg);
    std::map<BallId, BallId> cover_parent; // selected node -> nearest selected strict ancestor
    while (!stack.empty()) {
        auto [node, base] = stack.back();
        stack.pop_back();
        double node_avg = avg(space, f, basis.ball(node).atoms, r);
        double next_base = base;
        if (node_avg > 2.0 * base) {
            s.balls.push_back(node);
            next_base = node_avg;
            // find nearest selected strict ancestor
            BallId p = tree.parent(node);
            while (std::find(s.balls.begin(), s.balls.end(), p) == s.balls.end())
                p = tree.parent(p);
            cover_parent[node] = p;
            selected_children[p].push_back(node);
        }
        for (BallId c : tree.children(node)) stack.emplace_back(c, next_base);
    }
    std::sort(s.balls.begin(), s.balls.end());

    for (BallId q : s.balls) {
        AtomSet e = basis.ball(q).atoms;
        auto it = selected_children.find(q);
        if (it != selected_children.end())
            for (BallId c : it->second) e = set_difference_of(e, basis.ball(c).atoms);
        s.witnesses[q] = e;
    }
    return s;
}

FamilyTreeInvariantReport check_family_tree_invariants(
    const FamilyTree& tree, const std::shared_ptr<const SublinearOperator>& op,
    const std::shared_ptr<const BallBasis>& basis, const Function& f, double r) {
    FamilyTreeInvariantReport report;
    const MeasureSpace& space = basis->space();
    auto star = t_star(op, basis);
    MaximalOperator maximal(basis, r);
    const double k = basis->K();

    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const auto& node = tree.nodes[i];
        const AtomSet& a1 = basis->ball(basis->hull(node.ball)).atoms;
        const AtomSet& a3 = basis->ball(basis->hull_level(node.ball, 3)).atoms;

        // Children-hull mass bound.
        AtomSet child_hulls;
        for (int c : node.children)
            child_hulls = set_union_of(
                child_hulls,
                basis->ball(basis->hull(tree.nodes[static_cast<std::size_t>(c)].ball)).atoms);
        if (space.measure(child_hulls) >
            3.0 * k * k * basis->ball(node.ball).measure / tree.lambda + 1e-12)
            report.children_mass_ok = false;

        Function f_a = (i == 0) ? f : f.masked(a3);
        double threshold = avg(space, f, a3, r);

        for (int c : node.children) {
            const auto& child = tree.nodes[static_cast<std::size_t>(c)];
            const AtomSet& g2 = basis->ball(basis->hull_level(child.ball, 2)).atoms;
            const AtomSet& g3 = basis->ball(basis->hull_level(child.ball, 3)).atoms;
            const AtomSet& companion = basis->ball(child.companion).atoms;
            if (!is_subset(g2, companion) || !is_subset(companion, a1)) report.sandwich_ok = false;

            if (set_contains(node.stopping_set, child.witness_point)) report.witness_ok = false;
            if (threshold > 0.0) {
                Function tf = op->apply(f_a);
                Function tsf = star->apply(f_a);
                Function mf = maximal.apply(f_a);
                double gamma_at_xi = std::max({std::abs(tf[child.witness_point]),
                                               tsf[child.witness_point],
                                               tree.script_l * mf[child.witness_point]});
                if (gamma_at_xi > node.beta * threshold * (1.0 + 1e-9)) report.witness_ok = false;

                const AtomSet& companion_hull = basis->ball(basis->hull(child.companion)).atoms;
                AtomSet annulus = set_difference_of(companion_hull, g3);
                Function masked = op->apply_masked(f_a, annulus);
                double worst = 0.0;
                for (AtomId x : g2) worst = std::max(worst, std::abs(masked[x]));
                report.max_masked_ratio_over_beta =
                    std::max(report.max_masked_ratio_over_beta, worst / (node.beta * threshold));
            }
        }
    }
    return report;
}

} // namespace bo
