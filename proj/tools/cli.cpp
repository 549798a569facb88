// Command-line front end: load complexes, run the constructions and
// verification suites, and emit deterministic text or JSON reports.
//
// Exit codes: 0 ok, 1 verification failure, 2 parse error, 3 size guard.

#include "hopfstab/duality.hpp"
#include "hopfstab/io.hpp"
#include "hopfstab/selftest.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>

using namespace hopfstab;
using nlohmann::json;

namespace {

struct Options {
    std::string complex_path;
    std::string space;
    std::string fiber;
    std::string coeff = "group:2";
    std::string field = "Q";
    std::string ring;
    int q = 1;
    bool json_out = false;
    unsigned long max_dim = 65536;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--complex", o.complex_path,
                    "input JSON file (three-term complex, CW complex, or surface)");
    cmd->add_option("--space", o.space, "preset space name (point, circle1, torus_tri, ...)");
    cmd->add_option("--xi,--q", o.q, "slice degree q");
    cmd->add_option("--fiber", o.fiber, "fiber preset; slices the product pair instead");
    cmd->add_option("--coeff", o.coeff, "coefficient algebra (group:2x4, fun:3, dual:..., ...)");
    cmd->add_option("--field", o.field, "scalar field: Q, F<p>, or Qi");
    cmd->add_option("--ring", o.ring, "incidence ring: Z or Zmod:n");
    cmd->add_flag("--json", o.json_out, "emit a JSON report");
    cmd->add_option("--max-dim", o.max_dim, "total-dimension guard (default 65536)");
}

CoeffRing parse_ring(const std::string& s) {
    if (s.empty() || s == "Z") return CoeffRing::integers();
    if (s.rfind("Zmod:", 0) == 0) {
        long n = 0;
        try {
            size_t pos = 0;
            n = std::stol(s.substr(5), &pos);
            if (pos != s.size() - 5) n = 0;
        } catch (const std::exception&) {
            n = 0;
        }
        if (n >= 1) return CoeffRing::integers_mod(n);
    }
    throw ParseError("unknown ring: " + s + " (expected Z or Zmod:n)");
}

struct LoadedInput {
    std::optional<SAC> sac;
    std::optional<CWComplex> cw;
    std::optional<SimplicialSurface> surface;
};

LoadedInput load_input(const Options& o) {
    LoadedInput in;
    CoeffRing r = parse_ring(o.ring);
    if (!o.complex_path.empty()) {
        std::string text = read_text_file(o.complex_path);
        switch (classify_json(text)) {
            case InputKind::Sac:
                in.sac = sac_from_json(text);
                if (!o.ring.empty()) in.sac->ring = r;
                break;
            case InputKind::Cw:
                in.cw = cw_from_json(text);
                break;
            case InputKind::Surface:
                in.surface = surface_from_json(text);
                break;
        }
    } else if (!o.space.empty()) {
        if (o.space == "tetrahedron")
            in.surface = tetrahedron_surface();
        else if (o.space == "torus")
            in.surface = torus_surface();
        else if (o.space == "projective_plane")
            in.surface = projective_plane_surface();
        else
            in.cw = preset_space(o.space);
    }
    return in;
}

// The degree-q slice of whatever the options describe; with no input this is
// the empty complex.
SAC build_slice(const Options& o, const LoadedInput& in) {
    CoeffRing r = parse_ring(o.ring);
    if (in.sac) return *in.sac;
    if (in.surface) {
        CWComplex k = cw_from_surface(*in.surface);
        return xi_q(k, basepoint_only(k), o.q, r);
    }
    if (in.cw) {
        if (!o.fiber.empty()) return xi_f_q(*in.cw, preset_space(o.fiber), o.q, r);
        return xi_q(*in.cw, basepoint_only(*in.cw), o.q, r);
    }
    return SAC::empty(r);
}

int cmd_validate(const Options& o) {
    LoadedInput in = load_input(o);
    bool ok = true;
    std::string message = "valid";
    if (in.sac) {
        ValidationReport r = validate(*in.sac);
        ok = r.ok;
        if (!ok) message = r.message;
    } else if (in.cw) {
        ValidationReport r = validate_cw(*in.cw, parse_ring(o.ring));
        ok = r.ok;
        if (!ok) message = r.message;
    } else if (in.surface) {
        ok = is_closed_surface(*in.surface);
        if (!ok) message = "not a closed surface: some edge misses two triangles";
    } else {
        Hopf a = parse_hopf_spec(o.coeff, FieldSpec::parse(o.field));
        auto violations = check_axioms(a);
        ok = violations.empty();
        if (!ok) message = violations.front();
    }
    if (o.json_out) {
        json j = {{"ok", ok}, {"message", message}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << message << "\n";
    }
    return ok ? 0 : 1;
}

int cmd_spectrum(const Options& o) {
    LoadedInput in = load_input(o);
    SAC x = build_slice(o, in);
    Hopf a = parse_hopf_spec(o.coeff, FieldSpec::parse(o.field));
    RAction phi(a, x.ring);
    StabilizerContext c(x, a, phi, o.max_dim);
    SpectrumReport rep = joint_spectrum(c);
    if (o.json_out) {
        json entries = json::array();
        for (const auto& e : rep.entries)
            entries.push_back({{"t", e.violations}, {"dim", e.dimension}});
        json j = {{"total", rep.total}, {"entries", entries}};
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& e : rep.entries)
            std::cout << "t=" << e.violations << " dim=" << e.dimension << "\n";
    }
    return 0;
}

int cmd_ground(const Options& o) {
    LoadedInput in = load_input(o);
    SAC x = build_slice(o, in);
    Hopf a = parse_hopf_spec(o.coeff, FieldSpec::parse(o.field));
    RAction phi(a, x.ring);
    StabilizerContext c(x, a, phi, o.max_dim);
    std::string dim, grouplikes;
    std::vector<std::string> diagonal;
    try {
        GroundSpace g = ground_space(c);
        GroundHopf gh = ground_hopf(c, g);
        dim = std::to_string(g.basis.cols());
        grouplikes = gh.grouplike_group ? gh.grouplike_group->str() : "n/a";
        diagonal = form_diagonal_invariant(gh.hopf.frobenius_gram());
    } catch (const SizeGuard&) {
        // beyond the guard the spectral route is off; for group-algebra
        // coefficients the combinatorial cycle/boundary oracle still applies
        if (!a.group_factors) throw;
        GroupGroundInfo info = ground_info_group_coefficients(x, *a.group_factors);
        dim = info.dimension.get_str();
        grouplikes = info.grouplikes.str();
    }
    if (o.json_out) {
        json j = {{"dim", dim}, {"grouplikes", grouplikes}, {"gram_diagonal", diagonal}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "dim V0 = " << dim << "; grouplikes = " << grouplikes << "\n";
        if (!diagonal.empty()) {
            std::cout << "gram diagonal =";
            for (const auto& d : diagonal) std::cout << " " << d;
            std::cout << "\n";
        }
    }
    return 0;
}

int cmd_homology(const Options& o) {
    LoadedInput in = load_input(o);
    SAC x = build_slice(o, in);
    Hopf a = parse_hopf_spec(o.coeff, FieldSpec::parse(o.field));
    const auto& factors = a.group_factors ? a.group_factors : a.function_factors;
    if (!factors)
        throw ParseError("homology oracle needs group-type coefficients (group:... or fun:...)");
    AbelianGroup h = homology_group(x, *factors);
    if (o.json_out) {
        json j = {{"group", h.str()}, {"order", h.order().get_str()}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "H = " << h.str() << "; order = " << h.order().get_str() << "\n";
    }
    return 0;
}

int cmd_duality(const Options& o) {
    LoadedInput in = load_input(o);
    if (in.surface) {
        CoeffRing r = parse_ring(o.ring);
        SimplicialSurface s = *in.surface;
        if (r.is_integers) {
            auto oriented = orient_surface(s);
            if (!oriented)
                throw ParseError("surface is non-orientable; use --ring Zmod:2");
            s = *oriented;
        }
        CWComplex m = cw_from_surface(s);
        PDReport rep = pd_sac_check(s, all_cells(m), basepoint_only(m), o.q, r);
        if (o.json_out) {
            json j = {{"ok", rep.ok},
                      {"plus_signs", rep.plus_signs},
                      {"circ_signs", rep.circ_signs},
                      {"minus_signs", rep.minus_signs},
                      {"messages", rep.messages}};
            std::cout << j.dump(2) << "\n";
        } else {
            auto print_signs = [](const char* name, const std::map<std::string, int>& signs) {
                std::cout << name << " signs:";
                for (const auto& [label, sg] : signs)
                    std::cout << " " << label << (sg >= 0 ? ":+1" : ":-1");
                std::cout << "\n";
            };
            print_signs("plus", rep.plus_signs);
            print_signs("circ", rep.circ_signs);
            print_signs("minus", rep.minus_signs);
            for (const auto& msg : rep.messages) std::cout << msg << "\n";
            std::cout << (rep.ok ? "ok" : "failed") << "\n";
        }
        return rep.ok ? 0 : 1;
    }
    SAC x = build_slice(o, in);
    Hopf a = parse_hopf_spec(o.coeff, FieldSpec::parse(o.field));
    RAction phi(a, x.ring);
    CheckReport rep = transposition_duality_check(x, a, phi, o.max_dim);
    if (o.json_out) {
        json j = {{"ok", rep.ok}, {"messages", rep.messages}};
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& msg : rep.messages) std::cout << msg << "\n";
        std::cout << (rep.ok ? "ok" : "failed") << "\n";
    }
    return rep.ok ? 0 : 1;
}

int cmd_selftest(const Options& o) {
    if (o.json_out) {
        SelfTestResult res = run_selftest(nullptr);
        json items = json::array();
        for (const auto& item : res.items)
            items.push_back({{"name", item.name}, {"ok", item.ok}, {"details", item.details}});
        json j = {{"all_ok", res.all_ok}, {"items", items}};
        std::cout << j.dump(2) << "\n";
        return res.all_ok ? 0 : 1;
    }
    return run_selftest(&std::cout).all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized stabilizer models on short abstract complexes"};
    app.require_subcommand(1);
    Options o;
    CLI::App* validate_cmd = app.add_subcommand("validate", "check an input or coefficient algebra");
    CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "joint spectrum of the stabilizers");
    CLI::App* ground_cmd = app.add_subcommand("ground", "ground-space dimension and Hopf data");
    CLI::App* homology_cmd = app.add_subcommand("homology", "homology oracle for the slice");
    CLI::App* duality_cmd =
        app.add_subcommand("duality", "transposition or degree-complementary duality report");
    CLI::App* selftest_cmd = app.add_subcommand("selftest", "run the full verification suite");
    for (CLI::App* c :
         {validate_cmd, spectrum_cmd, ground_cmd, homology_cmd, duality_cmd, selftest_cmd})
        add_common(c, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (validate_cmd->parsed()) return cmd_validate(o);
        if (spectrum_cmd->parsed()) return cmd_spectrum(o);
        if (ground_cmd->parsed()) return cmd_ground(o);
        if (homology_cmd->parsed()) return cmd_homology(o);
        if (duality_cmd->parsed()) return cmd_duality(o);
        if (selftest_cmd->parsed()) return cmd_selftest(o);
    } catch (const SizeGuard& e) {
        std::cerr << "size guard: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
