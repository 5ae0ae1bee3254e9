#include "bo/ball_basis.hpp"

#include <algorithm>
#include <stdexcept>

namespace bo {

BallBasis::BallBasis(std::shared_ptr<const MeasureSpace> space, std::vector<AtomSet> ball_sets,
                     std::vector<std::optional<BallId>> hull_overrides)
    : space_(std::move(space)) {
    if (!space_) throw std::invalid_argument("BallBasis: null space");
    const int n = space_->atom_count();

    hull_overrides.resize(ball_sets.size());
    AtomSet everything = space_->all_atoms();
    bool have_whole = false;
    for (const AtomSet& s : ball_sets)
        if (s == everything) have_whole = true;
    if (!have_whole) {
        ball_sets.push_back(everything);
        hull_overrides.emplace_back(std::nullopt);
    }

    balls_.reserve(ball_sets.size());
    for (std::size_t i = 0; i < ball_sets.size(); ++i) {
        Ball b;
        b.id = static_cast<BallId>(i);
        b.atoms = make_atom_set(std::move(ball_sets[i]));
        if (b.atoms.empty()) throw std::invalid_argument("BallBasis: empty ball");
        if (b.atoms.front() < 0 || b.atoms.back() >= n)
            throw std::invalid_argument("BallBasis: atom id out of range");
        b.measure = space_->measure(b.atoms);
        if (b.atoms == everything) whole_id_ = b.id;
        balls_.push_back(std::move(b));
    }

    by_atom_.assign(static_cast<std::size_t>(n), {});
    for (const Ball& b : balls_)
        for (AtomId a : b.atoms) by_atom_[static_cast<std::size_t>(a)].push_back(b.id);

    hull_.resize(balls_.size());
    for (const Ball& b : balls_) {
        const auto& o = hull_overrides[static_cast<std::size_t>(b.id)];
        if (o) {
            if (*o < 0 || *o >= ball_count())
                throw std::invalid_argument("BallBasis: hull id out of range");
            hull_[static_cast<std::size_t>(b.id)] = *o;
        } else {
            hull_[static_cast<std::size_t>(b.id)] = compute_hull(balls_, *space_, b);
        }
    }

    k_ = 1.0;
    for (const Ball& b : balls_)
        k_ = std::max(k_, ball(hull(b.id)).measure / b.measure);

    supersets_.resize(balls_.size());
    for (const Ball& b : balls_) {
        // Candidates must contain the smallest atom of b; usually a short list.
        for (BallId id : by_atom_[static_cast<std::size_t>(b.atoms.front())])
            if (is_subset(b.atoms, ball(id).atoms))
                supersets_[static_cast<std::size_t>(b.id)].push_back(id);
    }
}

BallId BallBasis::minimal_ball_containing(AtomId a) const {
    const auto& cands = balls_containing(a);
    if (cands.empty()) throw std::invalid_argument("no ball contains the atom");
    BallId best = cands.front();
    for (BallId id : cands)
        if (ball(id).measure < ball(best).measure) best = id;
    return best;
}

AtomSet BallBasis::two_balls_union(BallId b) const {
    const Ball& target = ball(b);
    AtomSet u = target.atoms;
    for (const Ball& a : balls_)
        if (a.measure <= 2.0 * target.measure && sets_intersect(a.atoms, target.atoms))
            u = set_union_of(u, a.atoms);
    return u;
}

BallId compute_hull(const std::vector<Ball>& balls, const MeasureSpace& space, const Ball& b) {
    (void)space;
    AtomSet u = b.atoms;
    for (const Ball& a : balls)
        if (a.measure <= 2.0 * b.measure && sets_intersect(a.atoms, b.atoms))
            u = set_union_of(u, a.atoms);
    BallId best = -1;
    for (const Ball& a : balls) {
        if (!is_subset(u, a.atoms)) continue;
        if (best < 0 || a.measure < balls[static_cast<std::size_t>(best)].measure) best = a.id;
    }
    if (best < 0) throw std::logic_error("compute_hull: no containing ball (whole space missing)");
    return best;
}

double avg_star(const BallBasis& basis, const Function& f, BallId b, double r) {
    double best = 0.0;
    for (BallId a : basis.supersets_of(b))
        best = std::max(best, avg(basis.space(), f, basis.ball(a).atoms, r));
    return best;
}

} // namespace bo
