#ifndef BO_TREE_BASIS_HPP
#define BO_TREE_BASIS_HPP

#include <memory>
#include <vector>

#include "bo/ball_basis.hpp"

namespace bo {

/// Nested partition hierarchy: node atom-sets plus a parent index per node
/// (-1 for the root).  The root must be the whole space, the children of each
/// node must partition it, and every leaf must be a single atom.
struct TreeSpec {
    std::vector<AtomSet> nodes;
    std::vector<int> parent;
};

/// Ball-basis whose balls are the nodes of a nested partition tree, with the
/// martingale hull rule: the hull of A is the highest ancestor of measure at
/// most 2 mu(A), or A itself when the parent already exceeds that.
class TreeBasis {
public:
    TreeBasis(std::shared_ptr<BallBasis> basis, std::vector<BallId> parent, BallId root);

    const BallBasis& basis() const { return *basis_; }
    std::shared_ptr<BallBasis> basis_ptr() const { return basis_; }
    const MeasureSpace& space() const { return basis_->space(); }

    BallId root() const { return root_; }
    BallId parent(BallId id) const { return parent_.at(static_cast<std::size_t>(id)); }
    const std::vector<BallId>& children(BallId id) const {
        return children_.at(static_cast<std::size_t>(id));
    }
    bool is_leaf(BallId id) const { return children(id).empty(); }

    /// Internal nodes (at least one child), in id order.
    std::vector<BallId> internal_nodes() const;

private:
    std::shared_ptr<BallBasis> basis_;
    std::vector<BallId> parent_;
    std::vector<std::vector<BallId>> children_;
    BallId root_;
};

/// Builds the tree ball-basis from a nested partition spec.
/// Throws std::invalid_argument on non-partition layers or orphan atoms.
TreeBasis build_tree_basis(std::shared_ptr<const MeasureSpace> space, const TreeSpec& tree);

} // namespace bo

#endif
