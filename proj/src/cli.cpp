#include "mapspace/cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>

#include "mapspace/dsl.hpp"
#include "mapspace/errors.hpp"
#include "mapspace/library.hpp"
#include "mapspace/report.hpp"

namespace mapspace {

namespace {

struct Args {
    std::string command;
    std::vector<std::string> positional;
    bool json = false;
    std::optional<int> max_degree;
    std::optional<int> r;
    std::optional<std::string> emit;
};

const char* usage_text =
    "usage: mapspace <command> [args]\n"
    "  validate FILE                                check a model file\n"
    "  invariants FILE                              dl/cup/conn/dim/nilpotency\n"
    "  cohomology FILE --max-degree N               Betti numbers and representatives\n"
    "  map-model X Y --max-degree N [--emit FILE]   Haefliger model of F*(X,Y,*)\n"
    "  freeness X Y --max-degree N                  free-commutativity verdict\n"
    "  hn Y [--r R]                                 H(n) test / differential length\n"
    "  postnikov X Y --max-degree N                 principal ideal tower\n"
    "  make NAME ARGS...                            emit a built-in model (make list)\n"
    "flags: --json for machine output\n";

int parse_int(const std::string& s, const char* what)
{
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ValidationError(Err::InvalidParameter,
                              std::string(what) + " expects an integer, got '" + s + "'");
    }
}

Args parse_args(const std::vector<std::string>& argv)
{
    Args a;
    std::size_t i = 0;
    if (i < argv.size()) a.command = argv[i++];
    while (i < argv.size()) {
        const std::string& s = argv[i];
        auto need_value = [&](const char* flag) -> const std::string& {
            if (i + 1 >= argv.size())
                throw ValidationError(Err::InvalidParameter, std::string(flag) + " needs a value");
            return argv[++i];
        };
        if (s == "--json") a.json = true;
        else if (s == "--max-degree") a.max_degree = parse_int(need_value("--max-degree"), "--max-degree");
        else if (s == "--r") a.r = parse_int(need_value("--r"), "--r");
        else if (s == "--emit") a.emit = need_value("--emit");
        else if (s.rfind("--", 0) == 0)
            throw ValidationError(Err::InvalidParameter, "unknown flag " + s);
        else a.positional.push_back(s);
        ++i;
    }
    return a;
}

Report::Input describe(const std::string& role, const ModelFile& f)
{
    Report::Input in;
    in.role = role;
    in.name = f.name();
    in.kind = f.is_cdga() ? "cdga" : "algebra";
    in.digest = model_digest(f);
    return in;
}

int need_max_degree(const Args& a)
{
    if (!a.max_degree)
        throw ValidationError(Err::InvalidParameter,
                              "--max-degree is required: the computation is degree-bounded");
    if (*a.max_degree < 0)
        throw ValidationError(Err::InvalidParameter, "--max-degree must be >= 0");
    return *a.max_degree;
}

std::string rep_string(const CohomDegree& cd, const SparseVec& rep)
{
    std::string s;
    for (const auto& [i, c] : rep.entries) {
        if (!s.empty()) s += " + ";
        if (c == 1)
            s += cd.labels[static_cast<std::size_t>(i)];
        else
            s += rat_str(c) + "*" + cd.labels[static_cast<std::size_t>(i)];
    }
    return s.empty() ? "0" : s;
}

void fill_cohomology(Report& rep, const CohomReport& ch)
{
    nlohmann::json degs = nlohmann::json::array();
    for (int n = 0; n <= ch.max_degree; ++n) {
        const CohomDegree& cd = ch.degs[static_cast<std::size_t>(n)];
        nlohmann::json reps = nlohmann::json::array();
        for (const SparseVec& v : cd.reps) reps.push_back(rep_string(cd, v));
        degs.push_back({{"degree", n},
                        {"betti", cd.betti},
                        {"dim", cd.dim},
                        {"indecomposables", cd.betti - cd.decomp_dim},
                        {"representatives", reps}});
        std::string line = "H^" + std::to_string(n) + ": dim " + std::to_string(cd.betti);
        if (cd.betti > 0) {
            line += "  [";
            for (std::size_t k = 0; k < cd.reps.size(); ++k)
                line += (k ? "; " : "") + rep_string(cd, cd.reps[k]);
            line += "]";
        }
        rep.detail.push_back(line);
    }
    rep.data["cohomology"] = degs;
}

Report cmd_validate(const Args& a)
{
    if (a.positional.size() != 1)
        throw ValidationError(Err::InvalidParameter, "validate needs exactly one FILE");
    ModelFile f = parse_model_file(a.positional[0]);
    Report rep;
    rep.inputs.push_back(describe("model", f));
    if (f.is_cdga()) {
        const FreeModel& m = f.cdga();
        rep.verdict = "VALID cdga with " + std::to_string(m.ctx.size()) + " generators" +
                      (m.minimal ? " (minimal)" : " (not minimal)");
    } else {
        rep.verdict = "VALID algebra with " + std::to_string(f.algebra().dim()) +
                      " positive basis elements";
    }
    return rep;
}

Report cmd_invariants(const Args& a)
{
    if (a.positional.size() != 1)
        throw ValidationError(Err::InvalidParameter, "invariants needs exactly one FILE");
    ModelFile f = parse_model_file(a.positional[0]);
    Report rep;
    rep.inputs.push_back(describe("model", f));
    if (f.is_cdga()) {
        const FreeModel& m = f.cdga();
        rep.conn = connectivity(m);
        if (m.minimal) rep.dl = differential_length(m);
        rep.verdict = m.minimal ? "minimal model" : "free cdga (not minimal; dl undefined)";
    } else {
        const FiniteAlgebra& x = f.algebra();
        rep.cup = cup_length(x);
        rep.nilpotency = nilpotency(x);
        rep.dim = x.top_degree();
        rep.verdict = "finite cdga";
    }
    return rep;
}

Report cmd_cohomology(const Args& a)
{
    if (a.positional.size() != 1)
        throw ValidationError(Err::InvalidParameter, "cohomology needs exactly one FILE");
    int N = need_max_degree(a);
    ModelFile f = parse_model_file(a.positional[0]);
    Report rep;
    rep.inputs.push_back(describe("model", f));
    CohomReport ch = f.is_cdga() ? cohomology(FreeView(f.cdga(), N), N)
                                 : cohomology(FiniteView(f.algebra(), N), N);
    FreenessVerdict fv = freeness_check(ch, N);
    rep.verdict = fv.is_free
                      ? "free commutative through degree " + std::to_string(N)
                      : "not free: first failure at degree " + std::to_string(fv.first_failure);
    for (const auto& [d, c] : fv.generators)
        for (int k = 0; k < c; ++k) rep.generators.push_back(d);
    fill_cohomology(rep, ch);
    return rep;
}

Report cmd_map_model(const Args& a)
{
    if (a.positional.size() != 2)
        throw ValidationError(Err::InvalidParameter, "map-model needs X and Y files");
    int N = need_max_degree(a);
    ModelFile xf = parse_model_file(a.positional[0]);
    ModelFile yf = parse_model_file(a.positional[1]);
    if (xf.is_cdga() || !yf.is_cdga())
        throw ValidationError(Err::InvalidParameter, "map-model needs X = algebra, Y = cdga");

    Report rep;
    rep.inputs.push_back(describe("X", xf));
    rep.inputs.push_back(describe("Y", yf));
    MapModel mm = build_map_model(xf.algebra(), yf.cdga(), N);
    bool ok = verify_morphism(mm);
    rep.verdict = std::string(ok ? "morphism verified" : "MORPHISM CHECK FAILED") + "; " +
                  std::to_string(mm.model.ctx.size()) + " generators through degree " +
                  std::to_string(N);
    int ignored = static_cast<int>(yf.cdga().ctx.size() - mm.used_v.size());
    if (ignored > 0) {
        rep.verdict += "; " + std::to_string(ignored) + " Y-generator(s) above degree " +
                       std::to_string(N + 1) + " ignored";
        rep.data["ignored_y_generators"] = ignored;
    }

    nlohmann::json gens = nlohmann::json::array();
    for (std::size_t i = 0; i < mm.model.ctx.size(); ++i) {
        const ZGenInfo& zi = mm.model_info[i];
        gens.push_back({{"name", zi.name},
                        {"degree", zi.degree},
                        {"kind", std::string(1, zi.kind)},
                        {"d", mm.model.diff[i].str(mm.model.ctx)}});
        rep.detail.push_back("  " + zi.name + "  degree " + std::to_string(zi.degree) + "  kind " +
                             std::string(1, zi.kind) + "  D = " + mm.model.diff[i].str(mm.model.ctx));
        rep.generators.push_back(zi.degree);
    }
    rep.data["z_generators"] = gens;

    if (a.emit) {
        std::ofstream outf(*a.emit);
        if (!outf) throw ValidationError(Err::InvalidParameter, "cannot write " + *a.emit);
        outf << print_model(mm.model);
        rep.data["emitted"] = *a.emit;
        rep.detail.push_back("emitted model to " + *a.emit);
    }
    return rep;
}

Report cmd_freeness(const Args& a)
{
    if (a.positional.size() != 2)
        throw ValidationError(Err::InvalidParameter, "freeness needs X and Y files");
    int N = need_max_degree(a);
    ModelFile xf = parse_model_file(a.positional[0]);
    ModelFile yf = parse_model_file(a.positional[1]);
    if (xf.is_cdga() || !yf.is_cdga())
        throw ValidationError(Err::InvalidParameter, "freeness needs X = algebra, Y = cdga");

    Report rep;
    rep.inputs.push_back(describe("X", xf));
    rep.inputs.push_back(describe("Y", yf));
    PipelineReport pr = freeness_pipeline(xf.algebra(), yf.cdga(), N);
    rep.cup = pr.cup;
    rep.dl = pr.dl;
    rep.conn = pr.conn;
    rep.dim = pr.dim;
    for (const auto& [d, c] : pr.generators)
        for (int k = 0; k < c; ++k) rep.generators.push_back(d);

    std::string branch;
    switch (pr.branch) {
    case PipelineBranch::TheoremFree: branch = "cup0 < dl"; break;
    case PipelineBranch::ConverseWitness: branch = "converse (dim <= conn)"; break;
    case PipelineBranch::DirectFallback: branch = "direct computation"; break;
    }
    if (pr.is_free) {
        rep.verdict = "FREE";
        if (!rep.generators.empty()) {
            std::string degs;
            for (std::size_t i = 0; i < rep.generators.size(); ++i)
                degs += (i ? ", " : "") + std::to_string(rep.generators[i]);
            rep.verdict += "; generators at degrees " + degs;
        }
    } else {
        rep.verdict = "NOT_FREE";
        if (pr.first_failure >= 0)
            rep.verdict += "; first failure at degree " + std::to_string(pr.first_failure);
    }
    if (pr.degree_bounded) rep.verdict += " (degree-bounded through " + std::to_string(N) + ")";
    rep.detail.push_back("branch: " + branch);
    if (!pr.diagnostic.empty()) rep.detail.push_back("diagnostic: " + pr.diagnostic);
    rep.data["branch"] = branch;
    rep.data["degree_bounded"] = pr.degree_bounded;

    if (pr.witness) {
        rep.witness = Report::WitnessOut{pr.witness->y_name, pr.witness->r, pr.witness->omega_pretty,
                                         pr.witness->obstruction_degree};
    }
    return rep;
}

Report cmd_hn(const Args& a)
{
    if (a.positional.size() != 1)
        throw ValidationError(Err::InvalidParameter, "hn needs exactly one Y file");
    ModelFile yf = parse_model_file(a.positional[0]);
    if (!yf.is_cdga()) throw ValidationError(Err::InvalidParameter, "hn needs a cdga model");

    Report rep;
    rep.inputs.push_back(describe("Y", yf));
    const FreeModel& y = yf.cdga();
    int dl = differential_length(y);
    rep.dl = dl;
    rep.conn = connectivity(y);
    std::string mh = dl_is_infinite(dl) ? "inf" : std::to_string(dl - 1);
    if (a.r) {
        bool ok = hn_check(y, *a.r);
        rep.verdict = "hn_check(" + std::to_string(*a.r) + ") = " + (ok ? "true" : "false") +
                      "; dl = " + dl_str(dl) + "; m_H of rationalization = " + mh;
        rep.data["r"] = *a.r;
        rep.data["hn_check"] = ok;
    } else {
        rep.verdict = "dl = " + dl_str(dl) + "; m_H of rationalization = " + mh;
    }
    return rep;
}

Report cmd_postnikov(const Args& a)
{
    if (a.positional.size() != 2)
        throw ValidationError(Err::InvalidParameter, "postnikov needs X and Y files");
    int N = need_max_degree(a);
    ModelFile xf = parse_model_file(a.positional[0]);
    ModelFile yf = parse_model_file(a.positional[1]);
    if (xf.is_cdga() || !yf.is_cdga())
        throw ValidationError(Err::InvalidParameter, "postnikov needs X = algebra, Y = cdga");

    Report rep;
    rep.inputs.push_back(describe("X", xf));
    rep.inputs.push_back(describe("Y", yf));
    TowerReport tr = postnikov_tower(xf.algebra(), yf.cdga(), N);
    rep.nilpotency = tr.nilpotency;
    rep.dl = tr.r;

    Report::TowerOut to;
    to.s = tr.s;
    to.achieved = tr.achieved;
    to.m_eff = tr.m_eff;
    to.r = tr.r;
    to.matches_paper_s = tr.matches_paper_s;
    to.hypothesis_met = tr.hypothesis_met;
    bool all_zero = true;
    for (const TowerStage& st : tr.stages) {
        Report::StageOut so;
        so.k = st.k;
        so.power = st.power;
        so.base = st.is_base;
        so.fiber_dim = st.fiber_dim;
        so.fiber_degrees = st.fiber_z_degrees;
        so.quotient_degrees = st.quotient_z_degrees;
        so.zero_differential = st.fiber_zero_differential;
        so.quasi_iso = st.fiber_quasi_iso;
        if (!st.fiber_zero_differential) all_zero = false;
        to.stages.push_back(std::move(so));
    }
    rep.tower = std::move(to);
    rep.verdict = all_zero ? "every stage fiber is a product of Eilenberg-MacLane models"
                           : "SOME STAGE FIBER HAS NONZERO DIFFERENTIAL";
    return rep;
}

Report cmd_make(const Args& a, std::ostream& out)
{
    if (a.positional.empty())
        throw ValidationError(Err::InvalidParameter, "make needs a model name (try: make list)");
    Report rep;
    if (a.positional[0] == "list") {
        for (const LibraryEntry& e : library_entries())
            rep.detail.push_back(e.usage + "  - " + e.description);
        rep.verdict = "built-in model library";
        if (!a.json)
            for (const std::string& line : rep.detail) out << line << "\n";
        return rep;
    }
    std::vector<std::string> rest(a.positional.begin() + 1, a.positional.end());
    ModelFile f = library_make(a.positional[0], rest);
    std::string text = print_model(f);
    rep.inputs.push_back(describe("model", f));
    rep.data["model"] = text;
    rep.verdict = "ok";
    if (!a.json) out << text;
    return rep;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Args a;
    try {
        a = parse_args(args);
        if (a.command.empty() || a.command == "help" || a.command == "--help") {
            out << usage_text;
            return a.command.empty() ? 2 : 0;
        }

        auto t0 = std::chrono::steady_clock::now();
        Report rep;
        bool raw_done = false;
        if (a.command == "validate") rep = cmd_validate(a);
        else if (a.command == "invariants") rep = cmd_invariants(a);
        else if (a.command == "cohomology") rep = cmd_cohomology(a);
        else if (a.command == "map-model") rep = cmd_map_model(a);
        else if (a.command == "freeness") rep = cmd_freeness(a);
        else if (a.command == "hn") rep = cmd_hn(a);
        else if (a.command == "postnikov") rep = cmd_postnikov(a);
        else if (a.command == "make") {
            rep = cmd_make(a, out);
            raw_done = !a.json;
        } else {
            err << "unknown command '" << a.command << "'\n" << usage_text;
            return 2;
        }
        auto t1 = std::chrono::steady_clock::now();
        rep.timings_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        rep.command = a.command;
        for (const std::string& p : a.positional) rep.command += " " + p;
        if (a.max_degree) rep.command += " --max-degree " + std::to_string(*a.max_degree);
        if (a.r) rep.command += " --r " + std::to_string(*a.r);

        if (a.json) out << render_json(rep).dump(2) << "\n";
        else if (!raw_done) out << render_human(rep);
        return 0;
    } catch (const PreconditionError& e) {
        err << "precondition failure: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace mapspace
