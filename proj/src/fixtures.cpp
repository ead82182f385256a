#include "saito/fixtures.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "saito/poly_text.hpp"

namespace saito {

namespace fs = std::filesystem;

namespace {

std::string lower_name(GroupId g) {
    std::string s = group_name(g);
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

[[noreturn]] void fail(const fs::path& file, std::size_t line, const std::string& what) {
    throw std::runtime_error(file.string() + " line " + std::to_string(line) + ": " + what);
}

std::optional<std::size_t> degree_index(const GroupSpec& s, unsigned long d) {
    for (std::size_t i = 0; i < s.rank; ++i)
        if (s.weights.degrees[i] == d) return i;
    return std::nullopt;
}

Poly parse_entry(const fs::path& file, std::size_t lineno, const RingPtr& ring,
                 const std::string& text) {
    try {
        return parse_poly(ring, text, ParseMode::Lenient);
    } catch (const ParseError& e) {
        fail(file, lineno, e.what());
    }
}

// `degA degB poly` lines -> symmetric matrix. require_all: every upper pair
// must appear (main table); otherwise unlisted entries are zero (eta table).
std::vector<std::vector<Poly>> load_table(const GroupSpec& s, const fs::path& file,
                                          bool require_all, unsigned degree_drop) {
    const std::size_t n = s.rank;
    std::vector<std::vector<Poly>> entries(n, std::vector<Poly>(n, Poly::zero(s.generator_ring)));
    std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
    std::istringstream in(read_file(file));
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        unsigned long da = 0, db = 0;
        std::string poly_text;
        if (!(ls >> da >> db >> poly_text)) fail(file, lineno, "expected 'degA degB poly'");
        auto ia = degree_index(s, da), ib = degree_index(s, db);
        if (!ia || !ib) fail(file, lineno, "degree is not an invariant degree");
        if (*ia > *ib) fail(file, lineno, "entries are keyed with degA <= degB");
        if (seen[*ia][*ib]) fail(file, lineno, "duplicate entry");
        Poly p = parse_entry(file, lineno, s.generator_ring, poly_text);
        long want = static_cast<long>(da + db) - 2 - static_cast<long>(degree_drop);
        if (p.is_zero() || want < 0)
            fail(file, lineno, "entry must be a nonzero polynomial of nonnegative degree");
        if (!p.is_homogeneous_of_degree(static_cast<std::uint64_t>(want)))
            fail(file, lineno, "entry is not homogeneous of degree " + std::to_string(want));
        seen[*ia][*ib] = true;
        entries[*ia][*ib] = p;
        entries[*ib][*ia] = std::move(p);
    }
    if (require_all)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a; b < n; ++b)
                if (!seen[a][b])
                    fail(file, lineno, "missing entry (" + std::to_string(s.weights.degrees[a]) +
                                           "," + std::to_string(s.weights.degrees[b]) + ")");
    return entries;
}

std::vector<Poly> load_frame_file(const GroupSpec& s, const fs::path& file) {
    const std::size_t n = s.rank;
    std::vector<Poly> coords(n, Poly::zero(s.generator_ring));
    std::vector<bool> seen(n, false);
    std::istringstream in(read_file(file));
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string label, poly_text;
        if (!(ls >> label >> poly_text) || label.size() < 2 || label[0] != 't')
            fail(file, lineno, "expected 't<deg> poly'");
        unsigned long d = 0;
        try {
            d = std::stoul(label.substr(1));
        } catch (const std::exception&) {
            fail(file, lineno, "bad coordinate label " + label);
        }
        auto idx = degree_index(s, d);
        if (!idx) fail(file, lineno, "degree is not an invariant degree");
        if (seen[*idx]) fail(file, lineno, "duplicate coordinate");
        Poly p = parse_entry(file, lineno, s.generator_ring, poly_text);
        if (!p.is_homogeneous_of_degree(d) || p.is_zero())
            fail(file, lineno, "coordinate is not homogeneous of degree " + std::to_string(d));
        Monomial gen(s.rank);
        gen.exps[*idx] = 1;
        if (p.coeff(gen) == 0) fail(file, lineno, "coordinate does not involve its generator");
        seen[*idx] = true;
        coords[*idx] = std::move(p);
    }
    for (std::size_t a = 0; a < n; ++a)
        if (!seen[a])
            fail(file, lineno, "missing coordinate t" + std::to_string(s.weights.degrees[a]));
    return coords;
}

Poly load_potential_file(const GroupSpec& s, const fs::path& file) {
    std::string text = read_file(file);
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    Poly p = parse_entry(file, 1, s.flat_ring, text);
    std::uint64_t want = 2ull * s.weights.coxeter_number() + 2;
    if (p.is_zero() || !p.is_homogeneous_of_degree(want))
        fail(file, 1, "potential is not homogeneous of degree " + std::to_string(want));
    return p;
}

std::string mono_string(const RingPtr& ring, const Monomial& m) {
    if (m.is_constant()) return "1";
    std::string out;
    for (std::size_t i = 0; i < m.nvars(); ++i) {
        if (!m.exps[i]) continue;
        if (!out.empty()) out += "*";
        out += ring->name(i);
        if (m.exps[i] > 1) out += "^" + std::to_string(m.exps[i]);
    }
    return out;
}

}  // namespace

FixtureSet load_fixtures(GroupId g, const fs::path& root) {
    const GroupSpec& s = group_spec(g);
    fs::path dir = root / lower_name(g);
    FixtureSet fx;
    fx.group = g;
    std::error_code ec;
    if (fs::exists(dir / "metric.txt", ec)) fx.metric = load_table(s, dir / "metric.txt", true, 0);
    if (fs::exists(dir / "eta.txt", ec))
        fx.eta = load_table(s, dir / "eta.txt", false, s.coxeter_number());
    if (fs::exists(dir / "frame.txt", ec)) fx.frame = load_frame_file(s, dir / "frame.txt");
    if (fs::exists(dir / "potential.txt", ec))
        fx.potential = load_potential_file(s, dir / "potential.txt");
    return fx;
}

std::optional<std::string> diff_polys(const std::string& label, const Poly& computed,
                                      const Poly& fixture) {
    if (computed == fixture) return std::nullopt;
    const RingPtr& ring = computed.ring();
    // walk the union of monomials in canonical order and report the first
    // coefficient the two sides disagree on
    std::vector<const Monomial*> monos;
    for (const auto& t : computed.terms()) monos.push_back(&t.mono);
    for (const auto& t : fixture.terms()) monos.push_back(&t.mono);
    std::sort(monos.begin(), monos.end(),
              [&](const Monomial* a, const Monomial* b) { return ring->precedes(*a, *b); });
    for (const Monomial* m : monos) {
        Rational c = computed.coeff(*m), f = fixture.coeff(*m);
        if (c != f)
            return label + ": coefficient of " + mono_string(ring, *m) + ": computed " +
                   rational_to_string(c) + ", fixture " + rational_to_string(f);
    }
    return label + ": polynomials differ";  // unreachable for canonical polys
}

namespace {

std::optional<std::string> compare_tables(const std::string& what, const GroupSpec& s,
                                          const std::vector<std::vector<Poly>>& fixture,
                                          const std::vector<std::vector<Poly>>& computed) {
    for (std::size_t a = 0; a < s.rank; ++a)
        for (std::size_t b = a; b < s.rank; ++b) {
            std::string label = s.name + " " + what + " entry (" +
                                std::to_string(s.weights.degrees[a]) + "," +
                                std::to_string(s.weights.degrees[b]) + ")";
            if (auto d = diff_polys(label, computed[a][b], fixture[a][b])) return d;
        }
    return std::nullopt;
}

}  // namespace

std::optional<std::string> compare_metric(const FixtureSet& fx, const MetricTable& table) {
    if (!fx.metric) return std::nullopt;
    return compare_tables("metric", group_spec(fx.group), *fx.metric, table.entries);
}

std::optional<std::string> compare_eta(const FixtureSet& fx, const MetricTable& eta) {
    if (!fx.eta) return std::nullopt;
    return compare_tables("eta", group_spec(fx.group), *fx.eta, eta.entries);
}

std::optional<std::string> compare_frame(const FixtureSet& fx, const FlatFrame& frame) {
    if (!fx.frame) return std::nullopt;
    const GroupSpec& s = group_spec(fx.group);
    for (std::size_t a = 0; a < s.rank; ++a) {
        std::string label =
            s.name + " flat coordinate t" + std::to_string(s.weights.degrees[a]);
        if (auto d = diff_polys(label, frame.coords[a], (*fx.frame)[a])) return d;
    }
    return std::nullopt;
}

std::optional<std::string> compare_potential(const FixtureSet& fx, const Potential& pot) {
    if (!fx.potential) return std::nullopt;
    return diff_polys(group_spec(fx.group).name + " potential", pot.F, *fx.potential);
}

std::optional<std::string> verify_fixture_checksums(const fs::path& root) {
    fs::path list = root / "CHECKSUMS";
    std::error_code ec;
    if (!fs::exists(list, ec)) return "CHECKSUMS file is missing";
    std::map<std::string, std::string> recorded;
    {
        std::istringstream in(read_file(list));
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            auto sep = line.find("  ");
            if (sep != 64 || line.size() < 67)
                return "CHECKSUMS line " + std::to_string(lineno) + " is malformed";
            recorded[line.substr(66)] = line.substr(0, 64);
        }
    }
    std::set<std::string> present;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
        present.insert(fs::relative(entry.path(), root).generic_string());
    }
    for (const auto& [rel, hash] : recorded) {
        if (!present.count(rel)) return "fixture file " + rel + " is listed but missing";
        if (sha256_hex(read_file(root / rel)) != hash)
            return "fixture file " + rel + " does not match its recorded checksum";
    }
    for (const auto& rel : present)
        if (!recorded.count(rel)) return "fixture file " + rel + " is not listed in CHECKSUMS";
    return std::nullopt;
}

}  // namespace saito
