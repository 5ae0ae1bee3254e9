#include "bo/tree_basis.hpp"

#include <algorithm>
#include <stdexcept>

namespace bo {

TreeBasis::TreeBasis(std::shared_ptr<BallBasis> basis, std::vector<BallId> parent, BallId root)
    : basis_(std::move(basis)), parent_(std::move(parent)), root_(root) {
    children_.assign(parent_.size(), {});
    for (std::size_t i = 0; i < parent_.size(); ++i)
        if (parent_[i] >= 0) children_[static_cast<std::size_t>(parent_[i])].push_back(static_cast<BallId>(i));
}

std::vector<BallId> TreeBasis::internal_nodes() const {
    std::vector<BallId> out;
    for (BallId id = 0; id < basis_->ball_count(); ++id)
        if (!children(id).empty()) out.push_back(id);
    return out;
}

TreeBasis build_tree_basis(std::shared_ptr<const MeasureSpace> space, const TreeSpec& tree) {
    const std::size_t count = tree.nodes.size();
    if (count == 0 || tree.parent.size() != count)
        throw std::invalid_argument("build_tree_basis: node/parent size mismatch");

    std::vector<AtomSet> nodes(count);
    for (std::size_t i = 0; i < count; ++i) {
        nodes[i] = make_atom_set(tree.nodes[i]);
        if (nodes[i].empty()) throw std::invalid_argument("build_tree_basis: empty node");
    }

    int root = -1;
    std::vector<std::vector<int>> children(count);
    for (std::size_t i = 0; i < count; ++i) {
        int p = tree.parent[i];
        if (p < 0) {
            if (root >= 0) throw std::invalid_argument("build_tree_basis: multiple roots");
            root = static_cast<int>(i);
        } else {
            if (p >= static_cast<int>(count))
                throw std::invalid_argument("build_tree_basis: parent index out of range");
            children[static_cast<std::size_t>(p)].push_back(static_cast<int>(i));
        }
    }
    if (root < 0) throw std::invalid_argument("build_tree_basis: no root");
    if (nodes[static_cast<std::size_t>(root)] != space->all_atoms())
        throw std::invalid_argument("build_tree_basis: root must be the whole space");

    // Children of each node must partition it; leaves must be single atoms.
    for (std::size_t i = 0; i < count; ++i) {
        const auto& ch = children[i];
        if (ch.empty()) {
            if (nodes[i].size() != 1)
                throw std::invalid_argument("build_tree_basis: leaf node is not a single atom");
            continue;
        }
        AtomSet u;
        std::size_t total = 0;
        for (int c : ch) {
            u = set_union_of(u, nodes[static_cast<std::size_t>(c)]);
            total += nodes[static_cast<std::size_t>(c)].size();
        }
        if (u != nodes[i] || total != nodes[i].size())
            throw std::invalid_argument("build_tree_basis: children do not partition their parent");
    }

    // Reachability from the root (orphan nodes would make layers inconsistent).
    std::vector<char> seen(count, 0);
    std::vector<int> stack{root};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (seen[static_cast<std::size_t>(v)]) throw std::invalid_argument("build_tree_basis: cycle");
        seen[static_cast<std::size_t>(v)] = 1;
        for (int c : children[static_cast<std::size_t>(v)]) stack.push_back(c);
    }
    for (char s : seen)
        if (!s) throw std::invalid_argument("build_tree_basis: node not reachable from root");

    // Hull rule: climb to the highest ancestor with measure <= 2 mu(A).
    std::vector<double> mu(count);
    for (std::size_t i = 0; i < count; ++i) mu[i] = space->measure(nodes[i]);
    std::vector<std::optional<BallId>> hulls(count);
    for (std::size_t i = 0; i < count; ++i) {
        int cur = static_cast<int>(i);
        int best = cur;
        int up = tree.parent[static_cast<std::size_t>(cur)];
        while (up >= 0 && mu[static_cast<std::size_t>(up)] <= 2.0 * mu[i]) {
            best = up;
            up = tree.parent[static_cast<std::size_t>(up)];
        }
        hulls[i] = best;
    }

    auto basis = std::make_shared<BallBasis>(space, nodes, hulls);
    std::vector<BallId> parent(tree.parent.begin(), tree.parent.end());
    if (basis->ball_count() != static_cast<int>(count))
        throw std::logic_error("build_tree_basis: whole space missing from node list");
    return TreeBasis(std::move(basis), std::move(parent), root);
}

} // namespace bo
