#include "bo/fixture_io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace bo {

namespace {

[[noreturn]] void fail(int line_no, const std::string& what) {
    std::ostringstream os;
    os << "fixture parse error at line " << line_no << ": " << what;
    throw std::invalid_argument(os.str());
}

} // namespace

std::shared_ptr<BallBasis> read_basis_fixture(std::istream& in) {
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    int atom_count = -1;
    std::vector<double> masses;
    std::map<int, AtomSet> ball_lines;
    std::map<int, int> hull_lines;

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream is(line);
        std::string word;
        if (!(is >> word)) continue;
        if (word[0] == '#') continue;

        if (!header_seen) {
            std::string version;
            if (word != "basis" || !(is >> version) || version != "v1")
                fail(line_no, "expected header 'basis v1'");
            header_seen = true;
            continue;
        }

        if (word == "atoms") {
            if (atom_count >= 0) fail(line_no, "duplicate atoms directive");
            if (!(is >> atom_count) || atom_count <= 0) fail(line_no, "invalid atom count");
            masses.resize(static_cast<std::size_t>(atom_count));
            for (int i = 0; i < atom_count; ++i)
                if (!(is >> masses[static_cast<std::size_t>(i)]))
                    fail(line_no, "expected one mass per atom");
            std::string extra;
            if (is >> extra) fail(line_no, "trailing tokens after masses");
        } else if (word == "ball") {
            if (atom_count < 0) fail(line_no, "ball before atoms directive");
            int id = -1;
            if (!(is >> id) || id < 0) fail(line_no, "invalid ball id");
            if (ball_lines.count(id)) fail(line_no, "duplicate ball id");
            AtomSet atoms;
            int a;
            while (is >> a) {
                if (a < 0 || a >= atom_count) fail(line_no, "atom id out of range");
                atoms.push_back(a);
            }
            if (!is.eof()) fail(line_no, "invalid atom id token");
            if (atoms.empty()) fail(line_no, "ball with no atoms");
            ball_lines[id] = make_atom_set(std::move(atoms));
        } else if (word == "hull") {
            int b = -1, h = -1;
            if (!(is >> b >> h) || b < 0 || h < 0) fail(line_no, "invalid hull override");
            std::string extra;
            if (is >> extra) fail(line_no, "trailing tokens after hull override");
            if (hull_lines.count(b)) fail(line_no, "duplicate hull override");
            hull_lines[b] = h;
        } else {
            fail(line_no, "unknown directive '" + word + "'");
        }
    }

    if (!header_seen) fail(line_no, "missing header 'basis v1'");
    if (atom_count < 0) fail(line_no, "missing atoms directive");
    if (ball_lines.empty()) fail(line_no, "no balls");

    const int count = static_cast<int>(ball_lines.size());
    std::vector<AtomSet> sets(static_cast<std::size_t>(count));
    for (auto& [id, atoms] : ball_lines) {
        if (id >= count) fail(line_no, "ball ids must form a contiguous range starting at 0");
        sets[static_cast<std::size_t>(id)] = std::move(atoms);
    }
    std::vector<std::optional<BallId>> hulls(sets.size());
    for (auto [b, h] : hull_lines) {
        if (b >= count || h >= count) fail(line_no, "hull override references unknown ball");
        hulls[static_cast<std::size_t>(b)] = h;
    }

    auto space = std::make_shared<MeasureSpace>(std::move(masses));
    return std::make_shared<BallBasis>(space, std::move(sets), std::move(hulls));
}

std::shared_ptr<BallBasis> read_basis_fixture_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open fixture file: " + path);
    return read_basis_fixture(in);
}

void write_basis_fixture(std::ostream& out, const BallBasis& basis) {
    out << "basis v1\n";
    out << "atoms " << basis.space().atom_count();
    out.precision(17);
    for (double m : basis.space().masses()) out << ' ' << m;
    out << '\n';
    for (const Ball& b : basis.balls()) {
        out << "ball " << b.id;
        for (AtomId a : b.atoms) out << ' ' << a;
        out << '\n';
    }
    for (const Ball& b : basis.balls()) out << "hull " << b.id << ' ' << basis.hull(b.id) << '\n';
}

} // namespace bo
