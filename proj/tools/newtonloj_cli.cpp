// newtonloj: command-line front end. Every subcommand prints one JSON report.
// Exit status: 0 computed (whatever the verdict), 1 usage error, 2 internal failure.

#include "newtonloj/newtonloj.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

using namespace newtonloj;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const char* kGrammar = R"(Polynomial text:
  expr    := term (('+' | '-') term)*
  term    := unary ('*' unary)*
  unary   := ('+' | '-') unary | power
  power   := primary ('^' uint)*
  primary := uint ['/' uint] | 'x' index | '(' expr ')'
  Variables are x1..xN, components of a mapping are separated by ';'.
  Example: --text "x1^2 + x2^4; x1^2 + x2^2"

Global flags:
  --text EXPR        inline polynomial or mapping
  --json FILE        polynomial/mapping JSON ('-' reads stdin)
  --n N              number of variables (default: largest index in --text)
  --seed S           64-bit seed (default 1)
  --trials T         genericity/openness trials (default 1000)
  --epsilon E        openness perturbation size (default 1e-6)
  --budget B         main work budget of the subcommand
  --mode M           auto | exact | search | sampled (default auto)
  --out FILE         write the report there instead of stdout
)";

struct Input {
    PolynomialMapping F;
    nlohmann::json json;
};

struct Globals {
    std::string text, json_path;
    std::optional<std::size_t> n;
};

Input read_input(const Globals& g)
{
    if (g.text.empty() == g.json_path.empty()) throw UsageError("exactly one of --text or --json is required");
    Input in;
    if (!g.text.empty()) {
        const std::size_t n = g.n ? *g.n : infer_num_vars(g.text);
        if (n == 0) throw UsageError("cannot infer the number of variables; pass --n");
        in.F = parse_mapping(g.text, n);
    } else {
        std::string content;
        if (g.json_path == "-") {
            content.assign(std::istreambuf_iterator<char>(std::cin), {});
        } else {
            std::ifstream f(g.json_path);
            if (!f) throw UsageError("cannot read " + g.json_path);
            content.assign(std::istreambuf_iterator<char>(f), {});
        }
        in.F = mapping_from_json(nlohmann::json::parse(content));
        if (g.n && *g.n != in.F.num_vars()) throw UsageError("--n disagrees with the JSON input");
    }
    in.json = to_json(in.F);
    return in;
}

std::pair<Polynomial, Polynomial> pair_of(const PolynomialMapping& F)
{
    if (F.size() != 2) throw UsageError("this subcommand needs exactly two components: g; h");
    return {F[0], F[1]};
}

IntVector parse_int_vector(const std::string& s)
{
    IntVector v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            v.push_back(std::stoll(item));
        } catch (const std::exception&) {
            throw UsageError("malformed integer list: " + s);
        }
    }
    if (v.empty()) throw UsageError("empty integer list");
    return v;
}

std::vector<IntVector> parse_int_vectors(const std::string& s)
{
    std::vector<IntVector> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';'))
        if (item.find_first_not_of(' ') != std::string::npos) out.push_back(parse_int_vector(item));
    return out;
}

PointSet union_support(const PolynomialMapping& F)
{
    PointSet s;
    for (const auto& f : F.components())
        for (const auto& e : f.support()) s.push_back(e);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Newton polyhedra at infinity, non-degeneracy and global Lojasiewicz inequalities"};
    app.footer(kGrammar);
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    Globals glob;
    std::size_t n_flag = 0;
    app.add_option("--text", glob.text, "inline polynomial or mapping");
    app.add_option("--json", glob.json_path, "polynomial/mapping JSON file ('-' for stdin)");
    auto* n_opt = app.add_option("--n", n_flag, "number of variables")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "64-bit seed");
    app.add_option("--trials", cfg.trials, "number of trials");
    app.add_option("--epsilon", cfg.epsilon, "perturbation size")->check(CLI::PositiveNumber);
    std::size_t budget = 0;
    auto* budget_opt = app.add_option("--budget", budget, "main work budget")->check(CLI::PositiveNumber);
    app.add_option("--mode", cfg.mode, "checker mode")->check(CLI::IsMember({"auto", "exact", "search", "sampled"}));
    app.add_option("--out", cfg.out, "output file");

    std::map<std::string, std::function<std::pair<nlohmann::json, nlohmann::json>()>> run;
    auto sub = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };

    sub("polyhedron", "Newton polyhedron of each component");
    run["polyhedron"] = [&] {
        const auto in = read_input(glob);
        nlohmann::json out = nlohmann::json::array();
        for (const auto& f : in.F.components()) out.push_back(to_json(newton_polyhedron(f)));
        return std::pair{in.json, nlohmann::json{{"polyhedra", out}}};
    };

    sub("convenient", "is each Newton polyhedron convenient");
    run["convenient"] = [&] {
        const auto in = read_input(glob);
        nlohmann::json out = nlohmann::json::array();
        for (const auto& f : in.F.components()) out.push_back(is_convenient(newton_polyhedron(f)));
        return std::pair{in.json, nlohmann::json{{"convenient", out}}};
    };

    std::string q_text;
    auto* faces = sub("faces", "face at a covector, or all face tuples with every d < 0");
    faces->add_option("--q", q_text, "covector, e.g. \"1,-1\"");
    run["faces"] = [&] {
        const auto in = read_input(glob);
        std::vector<NewtonPolyhedron> polys;
        for (const auto& f : in.F.components()) polys.push_back(newton_polyhedron(f));
        nlohmann::json input = in.json;
        if (!q_text.empty()) {
            const IntVector q = parse_int_vector(q_text);
            if (q.size() != in.F.num_vars()) throw UsageError("--q has the wrong length");
            input["q"] = q;
            nlohmann::json out = nlohmann::json::array();
            for (const auto& p : polys) out.push_back(to_json(d_and_face(q, p)));
            return std::pair{input, nlohmann::json{{"faces", out}}};
        }
        const auto mode = cfg.mode == "sampled" ? EnumerationMode::Sampled : EnumerationMode::Exact;
        const std::size_t samples = cfg.budget ? *cfg.budget : cfg.enumeration_samples;
        return std::pair{input, to_json(enumerate_negative_face_tuples(polys, mode, samples, cfg.seed))};
    };

    sub("check-nondegenerate", "non-degeneracy at infinity of a mapping");
    run["check-nondegenerate"] = [&] {
        const auto in = read_input(glob);
        if (cfg.budget) (cfg.mode == "sampled" ? cfg.enumeration_samples : cfg.search_attempts) = *cfg.budget;
        return std::pair{in.json, to_json(nondegenerate_at_infinity(in.F, check_options(cfg)))};
    };

    sub("reduce", "monomial reduction of a mapping whose supports span a proper affine subspace");
    run["reduce"] = [&] {
        const auto in = read_input(glob);
        const auto r = reduce_mapping(in.F);
        const auto check = verify_reduction(r, cfg.budget ? *cfg.budget : 100, cfg.seed);
        return std::pair{in.json, nlohmann::json{{"reduction", to_json(r)}, {"verification", to_json(check)}}};
    };

    std::string covectors;
    auto* basis = sub("complete-basis", "complete covectors nonnegative on the support to a unimodular basis");
    basis->add_option("--covectors", covectors, "covectors, e.g. \"1,1,0;0,0,1\" (default: the affine-support ones)");
    run["complete-basis"] = [&] {
        const auto in = read_input(glob);
        nlohmann::json input = in.json;
        std::vector<IntVector> q_list;
        PointSet support = union_support(in.F);
        if (!covectors.empty()) {
            q_list = parse_int_vectors(covectors);
            input["covectors"] = q_list;
        } else {
            const auto ac = affine_support_covectors(in.F);
            q_list = ac.q_list;
            if (ac.needs_shift())
                for (auto& k : support) k[ac.shift_axis] += ac.shift;
        }
        return std::pair{input, to_json(unimodular_complete(q_list, support, in.F.num_vars()))};
    };

    sub("fit-exponents", "fit α, β, c of |g|^α + |g|^β >= c|h| from μ(t)");
    run["fit-exponents"] = [&] {
        const auto in = read_input(glob);
        const auto [g, h] = pair_of(in.F);
        FitConfig fc;
        fc.mu.rays = cfg.budget ? *cfg.budget : cfg.mu_rays;
        fc.mu.seed = cfg.seed;
        return std::pair{in.json, to_json(fit_exponents(g, h, fc))};
    };

    double alpha = 0.5, beta = 1.0, c_const = 1.0;
    auto* verify = sub("verify-inequality", "test |g|^α + |g|^β >= c|h| on box, level-set and curve samples");
    verify->add_option("--alpha", alpha)->check(CLI::PositiveNumber);
    verify->add_option("--beta", beta)->check(CLI::PositiveNumber);
    verify->add_option("--c", c_const)->check(CLI::PositiveNumber);
    run["verify-inequality"] = [&] {
        auto in = read_input(glob);
        const auto [g, h] = pair_of(in.F);
        in.json["alpha"] = alpha;
        in.json["beta"] = beta;
        in.json["c"] = c_const;
        VerifyConfig vc;
        vc.box_samples = cfg.budget ? *cfg.budget : cfg.box_samples;
        vc.box_half_width = cfg.box_half_width;
        vc.level_rays = cfg.level_rays;
        vc.seed = cfg.seed;
        vc.tolerance = cfg.inequality_tolerance;
        HuntConfig hc;
        hc.seed = cfg.seed;
        for (auto kind : {SequenceKind::FirstType, SequenceKind::SecondType})
            if (auto ev = hunt_sequences(g, h, kind, hc)) vc.curves.push_back(*ev);
        return std::pair{in.json, to_json(verify_inequality(g, h, alpha, beta, c_const, vc))};
    };

    std::string kind_text = "both";
    auto* hunt = sub("hunt-sequence", "search monomial curves for first/second-type sequences");
    hunt->add_option("--kind", kind_text)->check(CLI::IsMember({"first", "second", "both"}));
    run["hunt-sequence"] = [&] {
        auto in = read_input(glob);
        const auto [g, h] = pair_of(in.F);
        in.json["kind"] = kind_text;
        HuntConfig hc;
        hc.seed = cfg.seed;
        hc.delta = cfg.hunt_delta;
        if (cfg.budget) hc.attempts_per_candidate = *cfg.budget;
        nlohmann::json out = nlohmann::json::object();
        if (kind_text != "second") {
            const auto ev = hunt_sequences(g, h, SequenceKind::FirstType, hc);
            out["first_type"] = ev ? to_json(*ev) : nlohmann::json(nullptr);
        }
        if (kind_text != "first") {
            const auto ev = hunt_sequences(g, h, SequenceKind::SecondType, hc);
            out["second_type"] = ev ? to_json(*ev) : nlohmann::json(nullptr);
        }
        return std::pair{in.json, out};
    };

    std::string radii_text = "10,100,1000,10000";
    double level = 0.0;
    auto* kt = sub("ktilde-probe", "min gradient norm of f on spheres (optionally on h = r)");
    kt->add_option("--radii", radii_text, "increasing radii, comma separated");
    auto* level_opt = kt->add_option("--level", level, "level r of the constraint h = r (h is the second component)");
    run["ktilde-probe"] = [&] {
        auto in = read_input(glob);
        std::vector<double> radii;
        std::stringstream ss(radii_text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                radii.push_back(std::stod(item));
            } catch (const std::exception&) {
                throw UsageError("malformed radius list: " + radii_text);
            }
        }
        in.json["radii"] = radii;
        std::optional<KtildeConstraint> constraint;
        if (level_opt->count()) {
            if (in.F.size() != 2) throw UsageError("--level needs two components: f; h");
            constraint = KtildeConstraint{in.F[1], level};
            in.json["level"] = level;
        } else if (in.F.size() != 1) {
            throw UsageError("ktilde-probe takes one polynomial, or f; h with --level");
        }
        KtildeConfig kc;
        kc.starts = cfg.budget ? *cfg.budget : cfg.ktilde_starts;
        kc.seed = cfg.seed;
        return std::pair{in.json, to_json(ktilde_probe(in.F[0], constraint, radii, kc))};
    };

    double mult_alpha = 0.5;
    auto* mult = sub("multiplier", "N with h^N = g·f0, sampled check of |h|^N / g^2 on the unit ball");
    mult->add_option("--alpha", mult_alpha, "exponent α in (0, 1]");
    run["multiplier"] = [&] {
        auto in = read_input(glob);
        const auto [g, h] = pair_of(in.F);
        in.json["alpha"] = mult_alpha;
        MultiplierConfig mc;
        mc.samples = cfg.budget ? *cfg.budget : cfg.multiplier_samples;
        mc.bound = cfg.multiplier_bound;
        mc.seed = cfg.seed;
        return std::pair{in.json, to_json(multiplier(g, h, mult_alpha, mc))};
    };

    bool pinned = false, openness = false;
    auto* gen = sub("genericity", "random coefficients on the input supports; or an openness probe");
    gen->add_flag("--pinned", pinned, "use the input coefficients instead of random ones");
    gen->add_flag("--openness", openness, "perturb the input by ±epsilon and recheck");
    run["genericity"] = [&] {
        auto in = read_input(glob);
        in.json["pinned"] = pinned;
        in.json["openness"] = openness;
        CheckOptions opt = check_options(cfg);
        if (openness) return std::pair{in.json, to_json(openness_probe(in.F, cfg.epsilon, cfg.trials, cfg.seed, opt))};
        std::vector<PointSet> supports;
        std::vector<std::vector<Rational>> coeffs;
        for (const auto& f : in.F.components()) {
            supports.push_back(f.support());
            coeffs.emplace_back();
            for (const auto& e : supports.back()) coeffs.back().push_back(f.coefficient(e));
        }
        const auto sampler = pinned ? CoefficientSampler::fixed(coeffs) : CoefficientSampler::uniform();
        return std::pair{in.json, to_json(genericity_trial(supports, sampler, cfg.trials, cfg.seed, opt))};
    };

    sub("reproduce-example31", "the non-convenient pair where no inequality holds");
    run["reproduce-example31"] = [&] {
        return std::pair{nlohmann::json{{"g", example31_g}, {"h", example31_h}}, to_json(reproduce_example31(cfg))};
    };

    sub("reproduce-example32", "the pair with |g|^{1/2} + |g| >= |h|");
    run["reproduce-example32"] = [&] {
        if (cfg.budget) cfg.box_samples = *cfg.budget;
        return std::pair{nlohmann::json{{"g", example32_g}, {"h", example32_h}}, to_json(reproduce_example32(cfg))};
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return 1;
    }
    if (n_opt->count()) glob.n = n_flag;
    if (budget_opt->count()) cfg.budget = budget;

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        auto [input, report] = run.at(name)();
        const std::string text = report_envelope(name, cfg, input, std::move(report)).dump(2) + "\n";
        if (cfg.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(cfg.out, std::ios::binary);
            if (!f) throw std::runtime_error("cannot write " + cfg.out);
            f << text;
        }
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << kGrammar;
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << kGrammar;
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: bad JSON input: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal failure: " << e.what() << "\n";
        return 2;
    }
}
