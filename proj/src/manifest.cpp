#include "saito/manifest.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "saito/poly_text.hpp"

namespace saito {

namespace fs = std::filesystem;

// --- byte-level helpers -----------------------------------------------------

std::string sha256_hex(std::string_view bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("sha256: digest failed");
    static const char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xf]);
    }
    return out;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (!in.good() && !in.eof()) throw std::runtime_error("cannot read " + path.string());
    return std::move(buf).str();
}

void write_file_atomic(const fs::path& path, std::string_view content) {
    fs::path dir = path.parent_path();
    if (!dir.empty()) fs::create_directories(dir);
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out.good()) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw std::runtime_error("cannot write " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

namespace {

// Skip the write when the bytes are already on disk; reruns leave files
// untouched.
void write_if_changed(const fs::path& path, std::string_view content) {
    std::error_code ec;
    if (fs::exists(path, ec)) {
        try {
            if (read_file(path) == content) return;
        } catch (const std::exception&) {
        }
    }
    write_file_atomic(path, content);
}

std::string lower_name(GroupId g) {
    std::string s = group_name(g);
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace

// --- configuration ----------------------------------------------------------

unsigned resolve_threads(const std::string& requested) {
    if (requested == "auto") {
        unsigned hw = std::thread::hardware_concurrency();
        return hw ? hw : 1;
    }
    if (requested.empty() ||
        !std::all_of(requested.begin(), requested.end(),
                     [](unsigned char c) { return std::isdigit(c); }))
        throw std::invalid_argument("threads must be \"auto\" or a positive integer");
    unsigned long v = std::stoul(requested);
    if (v == 0 || v > 4096) throw std::invalid_argument("threads out of range");
    return static_cast<unsigned>(v);
}

MetricOptions metric_options(const RunConfig& cfg) {
    MetricOptions opt;
    opt.sigma = cfg.sigma;
    opt.solver = cfg.solver;
    opt.threads = resolve_threads(cfg.threads);
    opt.seed = cfg.seed;
    return opt;
}

// --- manifests --------------------------------------------------------------

namespace {

const char* solver_name(SolverKind k) {
    return k == SolverKind::Exact ? "exact" : "modular";
}

// frame_scale keys are flat-coordinate names "t<deg>"; emit by degree, not
// lexicographically, so t5 precedes t12.
std::vector<std::pair<std::string, Rational>> scales_by_degree(
    const std::map<std::string, Rational>& scales) {
    std::vector<std::pair<std::string, Rational>> out(scales.begin(), scales.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::stoul(a.first.substr(1)) < std::stoul(b.first.substr(1));
    });
    return out;
}

}  // namespace

std::string RunManifest::serialize() const {
    std::ostringstream out;
    out << "tool=" << tool << "\n";
    out << "group=" << group << "\n";
    out << "sigma=" << rational_to_string(sigma) << "\n";
    out << "solver=" << solver << "\n";
    out << "threads=" << threads << "\n";
    out << "seed=" << seed << "\n";
    if (frame_eta_const) out << "frame_eta_const=" << rational_to_string(*frame_eta_const) << "\n";
    for (const auto& [name, value] : scales_by_degree(frame_scales))
        out << "frame_scale_" << name << "=" << rational_to_string(value) << "\n";
    if (potential_eta_unit)
        out << "potential_eta_unit=" << rational_to_string(*potential_eta_unit) << "\n";
    for (const auto& [name, hash] : artifacts) out << "artifact=" << name << " sha256=" << hash << "\n";
    return std::move(out).str();
}

RunManifest RunManifest::parse(const std::string& text) {
    RunManifest m;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("manifest line " + std::to_string(lineno) + ": no '='");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        if (key == "tool") m.tool = value;
        else if (key == "group") m.group = value;
        else if (key == "sigma") m.sigma = rational_from_string(value);
        else if (key == "solver") m.solver = value;
        else if (key == "threads") m.threads = value;
        else if (key == "seed") m.seed = std::stoull(value);
        else if (key == "frame_eta_const") m.frame_eta_const = rational_from_string(value);
        else if (key == "potential_eta_unit") m.potential_eta_unit = rational_from_string(value);
        else if (key.starts_with("frame_scale_"))
            m.frame_scales[key.substr(12)] = rational_from_string(value);
        else if (key == "artifact") {
            auto sp = value.find(' ');
            if (sp == std::string::npos || !value.substr(sp + 1).starts_with("sha256="))
                throw std::runtime_error("manifest line " + std::to_string(lineno) +
                                         ": bad artifact entry");
            m.artifacts[value.substr(0, sp)] = value.substr(sp + 1 + 7);
        } else
            throw std::runtime_error("manifest line " + std::to_string(lineno) + ": unknown key '" +
                                     key + "'");
    }
    return m;
}

bool RunManifest::config_matches(const RunConfig& cfg) const {
    // The thread setting, solver, and seed never influence artifact bytes
    // (solutions are unique and re-verified), so a cache produced under a
    // different one of those is still valid.
    return tool == kToolVersion && group == group_name(cfg.group) && sigma == cfg.sigma;
}

RunManifest RunManifest::from_config(const RunConfig& cfg) {
    RunManifest m;
    m.tool = kToolVersion;
    m.group = group_name(cfg.group);
    m.sigma = cfg.sigma;
    m.solver = solver_name(cfg.solver);
    m.threads = cfg.threads;
    m.seed = cfg.seed;
    return m;
}

std::optional<RunManifest> load_manifest(const fs::path& group_dir) {
    std::error_code ec;
    fs::path p = group_dir / "manifest.txt";
    if (!fs::exists(p, ec)) return std::nullopt;
    try {
        return RunManifest::parse(read_file(p));
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::optional<std::string> verify_manifest(const fs::path& group_dir, const RunManifest& m) {
    for (const auto& [name, hash] : m.artifacts) {
        fs::path p = group_dir / name;
        std::error_code ec;
        if (!fs::exists(p, ec)) return "artifact " + name + " is missing";
        if (sha256_hex(read_file(p)) != hash)
            return "artifact " + name + " does not match its recorded hash";
    }
    return std::nullopt;
}

// --- artifact serialization -------------------------------------------------

std::string serialize_metric_entries(const MetricTable& table, bool skip_zero) {
    const GroupSpec& s = group_spec(table.group);
    std::ostringstream out;
    for (std::size_t a = 0; a < s.rank; ++a)
        for (std::size_t b = a; b < s.rank; ++b) {
            const Poly& e = table.entries[a][b];
            if (skip_zero && e.is_zero()) continue;
            out << s.weights.degrees[a] << " " << s.weights.degrees[b] << " "
                << to_canonical_string(e) << "\n";
        }
    return std::move(out).str();
}

std::string serialize_frame(const FlatFrame& frame) {
    const GroupSpec& s = group_spec(frame.group);
    std::ostringstream out;
    for (std::size_t a = 0; a < s.rank; ++a)
        out << "t" << s.weights.degrees[a] << " " << to_canonical_string(frame.coords[a]) << "\n";
    return std::move(out).str();
}

std::string serialize_potential(const Potential& pot) {
    return to_canonical_string(pot.F) + "\n";
}

// --- the cached pipeline ----------------------------------------------------

namespace {

// Strict re-parse of a cached metric artifact; any defect disqualifies the
// cache and the table is recomputed.
std::optional<MetricTable> parse_metric_text(GroupId g, const Rational& sigma,
                                             const std::string& text) {
    const GroupSpec& s = group_spec(g);
    const std::size_t n = s.rank;
    MetricTable table;
    table.group = g;
    table.sigma = sigma;
    table.entries.assign(n, std::vector<Poly>(n, Poly::zero(s.generator_ring)));
    std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
    std::istringstream in(text);
    std::string line;
    try {
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::istringstream ls(line);
            unsigned da = 0, db = 0;
            std::string poly_text;
            if (!(ls >> da >> db)) return std::nullopt;
            std::getline(ls, poly_text);
            if (!poly_text.empty() && poly_text.front() == ' ') poly_text.erase(0, 1);
            auto index_of = [&](unsigned d) -> std::optional<std::size_t> {
                for (std::size_t i = 0; i < n; ++i)
                    if (s.weights.degrees[i] == d) return i;
                return std::nullopt;
            };
            auto ia = index_of(da), ib = index_of(db);
            if (!ia || !ib || *ia > *ib || seen[*ia][*ib]) return std::nullopt;
            Poly p = parse_poly(s.generator_ring, poly_text, ParseMode::Strict);
            if (!p.is_homogeneous_of_degree(da + db - 2) && !p.is_zero()) return std::nullopt;
            seen[*ia][*ib] = true;
            table.entries[*ia][*ib] = p;
            table.entries[*ib][*ia] = std::move(p);
        }
    } catch (const ParseError&) {
        return std::nullopt;
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b)
            if (!seen[a][b]) return std::nullopt;
    return table;
}

// Keep the previous manifest's artifact lines (and the metadata tied to
// them) when the files on disk still match their recorded hashes; everything
// else is forgotten until its stage runs again.
void carry_valid_artifacts(RunManifest& m, const std::optional<RunManifest>& old,
                           const fs::path& gdir, const RunConfig& cfg) {
    if (!old || !old->config_matches(cfg)) return;
    for (const auto& [name, hash] : old->artifacts) {
        fs::path p = gdir / name;
        std::error_code ec;
        if (!fs::exists(p, ec)) continue;
        try {
            if (sha256_hex(read_file(p)) != hash) continue;
        } catch (const std::exception&) {
            continue;
        }
        m.artifacts[name] = hash;
    }
    if (m.artifacts.count("frame.txt")) {
        m.frame_scales = old->frame_scales;
        m.frame_eta_const = old->frame_eta_const;
    }
    if (m.artifacts.count("potential.txt")) m.potential_eta_unit = old->potential_eta_unit;
}

void put_artifact(RunManifest& m, const fs::path& gdir, const std::string& name,
                  const std::string& content) {
    write_if_changed(gdir / name, content);
    m.artifacts[name] = sha256_hex(content);
}

}  // namespace

PipelineResult run_pipeline(const RunConfig& cfg, Stage upto) {
    const GroupSpec& s = group_spec(cfg.group);
    fs::path gdir = cfg.cache_dir / lower_name(cfg.group);
    std::optional<RunManifest> old = load_manifest(gdir);

    // metric: the one stage worth loading back from disk
    std::optional<MetricTable> cached;
    if (old && old->config_matches(cfg)) {
        auto it = old->artifacts.find("metric.txt");
        std::error_code ec;
        if (it != old->artifacts.end() && fs::exists(gdir / "metric.txt", ec)) {
            try {
                std::string text = read_file(gdir / "metric.txt");
                if (sha256_hex(text) == it->second)
                    cached = parse_metric_text(cfg.group, cfg.sigma, text);
            } catch (const std::exception&) {
            }
        }
    }

    PipelineResult res;
    res.group_dir = gdir;
    res.gtable = cached ? std::move(*cached) : metric_table(cfg.group, metric_options(cfg));
    res.eta = eta_table(res.gtable);

    RunManifest m = RunManifest::from_config(cfg);
    carry_valid_artifacts(m, old, gdir, cfg);

    put_artifact(m, gdir, "metric.txt", serialize_metric_entries(res.gtable, false));
    if (upto >= Stage::Eta) put_artifact(m, gdir, "eta.txt", serialize_metric_entries(res.eta, true));
    if (upto >= Stage::Flat) {
        res.frame = flat_frame(cfg.group, res.gtable);
        put_artifact(m, gdir, "frame.txt", serialize_frame(*res.frame));
        m.frame_scales.clear();
        for (std::size_t a = 0; a < s.rank; ++a)
            m.frame_scales["t" + std::to_string(s.weights.degrees[a])] = res.frame->scales[a];
        m.frame_eta_const = res.frame->eta_const;
    }
    if (upto >= Stage::Potential) {
        res.potential = frobenius_potential(*res.frame, res.gtable);
        put_artifact(m, gdir, "potential.txt", serialize_potential(*res.potential));
        m.potential_eta_unit = res.potential->eta_unit;
    }

    write_if_changed(gdir / "manifest.txt", m.serialize());
    res.manifest = std::move(m);
    return res;
}

// --- basic-invariant artifacts ----------------------------------------------

std::map<std::string, std::string> invariant_artifacts(GroupId g,
                                                       std::optional<std::uint32_t> degree) {
    const GroupSpec& s = group_spec(g);
    std::map<std::string, std::string> out;
    for (std::size_t i = 0; i < s.rank; ++i) {
        std::uint32_t d = s.weights.degrees[i];
        if (degree && *degree != d) continue;
        out[s.generator_ring->name(i) + ".txt"] = to_canonical_string(basic_invariant(g, d)) + "\n";
    }
    if (out.empty())
        throw std::invalid_argument("degree " + std::to_string(*degree) +
                                    " is not an invariant degree of " + group_name(g));
    return out;
}

std::filesystem::path write_invariant_artifacts(const RunConfig& cfg,
                                                std::optional<std::uint32_t> degree) {
    fs::path gdir = cfg.cache_dir / lower_name(cfg.group);
    std::optional<RunManifest> old = load_manifest(gdir);
    RunManifest m = RunManifest::from_config(cfg);
    carry_valid_artifacts(m, old, gdir, cfg);
    for (const auto& [name, content] : invariant_artifacts(cfg.group, degree))
        put_artifact(m, gdir, "invariants/" + name, content);
    write_if_changed(gdir / "manifest.txt", m.serialize());
    return gdir;
}

}  // namespace saito
