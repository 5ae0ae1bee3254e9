#ifndef BO_DOMINATION_HPP
#define BO_DOMINATION_HPP

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "bo/bo_verify.hpp"
#include "bo/covering.hpp"
#include "bo/flow_certify.hpp"
#include "bo/sparse.hpp"
#include "bo/tree_basis.hpp"

namespace bo {

/// One step of the ball-chain extension.  For B with hull(B) = B the minimal
/// strict superset realizes the connectivity step (its measure automatically
/// exceeds 2 mu(B)); otherwise, with a the largest intersecting measure in
/// [mu(B), 2 mu(B)] and b the smallest one above 2 mu(B):
///   b <= K^2 a : the third hull iterate of a minimal witness of [b, 2b),
///   otherwise  : the hull of a maximal witness of (a/2, a],
/// falling back to the whole space when nothing intersects above 2 mu(B).
/// The result is enlarged along hulls until it contains B^[2].
BallId chain_extend(const BallBasis& basis, BallId b);

/// Iterates chain_extend until the whole space is reached (inclusive).
/// The returned chain satisfies B_{k-1}^[2] inside B_k everywhere and
/// mu(B_k) > 2 mu(B_{k-2}) until the whole space terminates it.
std::vector<BallId> chain_to_whole_space(const BallBasis& basis, BallId b);

struct BOConstants {
    double l1 = 0.0;
    double l2 = 0.0;
    double weak_norm = 0.0;
    double total() const { return l1 + l2 + weak_norm; }

    static BOConstants from_report(const BOReport& r) {
        return {r.l1_estimate, r.l2_estimate, r.weak_norm};
    }
};

struct FamilyTreeNode {
    BallId ball = -1;
    int parent = -1; // node index, -1 at the root
    std::vector<int> children;
    int rank = 0; // floor(log_R mu(ball)), R = K^2
    AtomSet stopping_set; // F_A
    double beta = 0.0;
    BallId companion = -1;   // G-tilde, set on non-root nodes
    AtomId witness_point = -1; // xi in companion minus parent's F
};

struct FamilyTree {
    std::vector<FamilyTreeNode> nodes; // node 0 is the root
    double lambda = 0.0;
    double script_l = 0.0; // L1 + L2 + weak norm in use
    double rank_base = 4.0;
    double beta_max = 0.0;

    int size() const { return static_cast<int>(nodes.size()); }
    const FamilyTreeNode& root() const { return nodes.front(); }
};

int rank_of(double mu, double rank_base);

/// Stopping-time family tree with grandparent containing hull(B):
/// per node A, F_A = { Gamma f_A > beta <f>_{A^[3],r} } with
/// Gamma = max(|T f_A|, T* f_A, L M_r f_A), beta doubled from 2 L lambda
/// until mu(F_A) <= mu(A)/lambda, and children produced by the economical
/// cover of F_A intersect A^[1] followed by the chain walk stopped at the
/// first ball whose next hull escapes F_A.
/// Requires lambda >= 3 K^4 and f not identically zero on the root.
FamilyTree build_family_tree(const std::shared_ptr<const SublinearOperator>& op,
                             const std::shared_ptr<const BallBasis>& basis, const Function& f,
                             BallId b, double r, double lambda, const BOConstants& constants);

struct PruneResult {
    std::vector<int> retained; // node indices, sorted
    int removed_by_interleave = 0;
    int removed_by_disjointing = 0;
};

/// Stagewise rank pruning: from the top rank downward, first drop any node of
/// the current rank whose second hull meets a retained ball of strictly
/// intermediate rank (gap above and below), then thin the rank class to a
/// greedy disjoint subfamily; removals always take the whole subtree.
PruneResult prune_tree(const FamilyTree& tree, const BallBasis& basis);

/// E(A) = A minus the union of retained balls of rank at most rank(A) - 2.
std::map<int, AtomSet> exclusion_sets(const FamilyTree& tree, const BallBasis& basis,
                                      const std::vector<int>& retained);

struct DominationResult {
    bool ok = true;
    double constant = 0.0;
    AtomId failure_witness = -1; // atom with zero sparse value but nonzero Tf
};

/// Minimal C with |Tf(x)| <= C A_{S,r} f(x) over the given atoms (all atoms
/// by default), or a failure witness when the sparse value vanishes where Tf
/// does not.
DominationResult verify_domination(const SublinearOperator& op, const BallBasis& basis,
                                   const SparseCollection& s, const Function& f, double r,
                                   const AtomSet* atoms = nullptr);

struct Theorem1Result {
    SparseCollection combined; // union of the two families (witness-free)
    SparseCollection family_odd_rank;
    SparseCollection family_even_rank;
    double gamma_reported = 0.0;
    bool families_certified = false;
    double domination_constant = 0.0;
    double beta_final = 0.0;
    int tree_size = 0;
    int pruned_size = 0;
    FamilyTree tree;
    std::vector<int> retained;
};

/// The constructive sparse-domination pipeline: family tree, pruning, third
/// hulls of the retained balls split by rank parity, witnesses from the
/// exclusion sets (re-certified by the exact flow at the reported gamma), and
/// the measured pointwise domination constant over the root ball.
Theorem1Result theorem1_sparse(const std::shared_ptr<const SublinearOperator>& op,
                               const std::shared_ptr<const BallBasis>& basis, const Function& f,
                               BallId b, double r, double lambda, const BOConstants& constants);

/// Independent stopping-time oracle on tree bases: starting from the root,
/// select a node when its r-average exceeds twice that of its nearest
/// selected ancestor.  The result is 1/2-sparse with nested witness rings and
/// its sparse operator dominates the tree maximal function up to factor 4.
SparseCollection oracle_dyadic_sparse(const TreeBasis& tree, const Function& f, double r);

struct FamilyTreeInvariantReport {
    bool sandwich_ok = true;        // G^[2] inside companion inside parent^[1]
    bool witness_ok = true;         // xi outside F_parent with Gamma f_A(xi) <= beta <f>
    bool children_mass_ok = true;   // mu(union children hulls) <= 3 K^2 mu(A) / lambda
    double max_masked_ratio_over_beta = 0.0; // masked annulus action vs beta <f>_{A^[3],r}
};

FamilyTreeInvariantReport check_family_tree_invariants(
    const FamilyTree& tree, const std::shared_ptr<const SublinearOperator>& op,
    const std::shared_ptr<const BallBasis>& basis, const Function& f, double r);

} // namespace bo

#endif
