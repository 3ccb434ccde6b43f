#include "holo/experiment.hpp"

#include "holo/conditioning.hpp"
#include "holo/counterexamples.hpp"
#include "holo/errors.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace holo {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<Task, std::string_view>, 9> kTaskNames{{
    {Task::Eval, "eval"},
    {Task::Jacobian, "jacobian"},
    {Task::KappaSup, "kappa-sup"},
    {Task::RefinedSup, "refined-sup"},
    {Task::BzRun, "bz-run"},
    {Task::BzSequence, "bz-sequence"},
    {Task::Landau, "landau"},
    {Task::RescaledGrowth, "rescaled-growth"},
    {Task::Counterexample, "counterexample"},
}};

// ---- JSON value helpers

json jnum(double x) {
    if (std::isnan(x)) return nullptr;
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

json jcomplex(Complex z) { return format_complex(z); }

json jvector(const CVector& v) {
    json a = json::array();
    for (const auto& z : v) a.push_back(jcomplex(z));
    return a;
}

json jmatrix(const CMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < m.size(); ++j) r.push_back(jcomplex(m(i, j)));
        rows.push_back(std::move(r));
    }
    return rows;
}

[[noreturn]] void bad(const std::string& where, const std::string& what) { throw ConfigError(where + ": " + what); }

Complex read_complex(const json& j, const std::string& where) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        try {
            return parse_complex(j.get<std::string>());
        } catch (const ParseError& e) {
            bad(where, e.what());
        }
    }
    bad(where, "expected a number or a complex literal string");
}

double read_real(const json& j, const std::string& where) {
    if (!j.is_number()) bad(where, "expected a number");
    return j.get<double>();
}

int read_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) bad(where, "expected an integer");
    return j.get<int>();
}

CVector read_vector(const json& j, const std::string& where) {
    if (!j.is_array()) bad(where, "expected an array of complex numbers");
    CVector v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v[i] = read_complex(j[i], where);
    return v;
}

void check_keys(const json& j, const std::string& where, std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) bad(where, "expected an object");
    const std::set<std::string_view> ok(allowed);
    for (const auto& [key, _] : j.items())
        if (!ok.count(key)) bad(where, "unknown key '" + key + "'");
}

template <class T, class Reader>
void read_opt(const json& obj, const char* key, T& dst, const std::string& where, Reader reader) {
    if (obj.contains(key)) dst = reader(obj.at(key), where + "." + key);
}

json certificate_json(const MembershipCertificate& c) {
    return {{"target", jvector(c.target)},
            {"preimage", jvector(c.preimage)},
            {"residual", jnum(c.residual)},
            {"domain_margin", jnum(c.domain_margin)}};
}

json landau_json(const LandauEstimate& e) {
    json certs = json::array();
    for (const auto& c : e.certificates) certs.push_back(certificate_json(c));
    return {{"center", jvector(e.center)},
            {"r_lo", jnum(e.r_lo)},
            {"r_hi", jnum(e.r_hi)},
            {"r_hi_kind", std::string(bound_kind_name(e.r_hi_kind))},
            {"directions_tested", e.directions_tested},
            {"certificates", std::move(certs)}};
}

json step_json(const RenormStep& s) {
    json chk = {{"max_psi_derivative", jnum(s.check.max_psi_derivative)},
                {"bound", jnum(s.check.bound)},
                {"max_Bz", jnum(s.check.max_Bz)},
                {"Bz_bound", jnum(s.check.Bz_bound)},
                {"check_radius", jnum(s.check.check_radius)},
                {"points_checked", s.check.points_checked},
                {"derivative_pass", s.check.derivative_pass},
                {"Bz_pass", s.check.Bz_pass},
                {"pass", s.check.pass()}};
    if (s.check.offending_point) chk["offending_point"] = jvector(*s.check.offending_point);
    return {{"lambda", jnum(s.lambda)},
            {"base_point", jvector(s.base_point)},
            {"B", jmatrix(s.B)},
            {"psi", print(s.psi)},
            {"C", jnum(s.C)},
            {"validity_radius", jnum(s.validity_radius)},
            {"derivative_bound_check", std::move(chk)}};
}

std::vector<std::pair<Complex, Complex>> random_centres(std::uint64_t seed, int count, double radius) {
    const DomainSpec box{DomainShape::Polydisc, radius, 2};
    std::vector<std::pair<Complex, Complex>> out;
    for (int i = 0; i < count; ++i) {
        auto eng = slot_engine(seed, static_cast<std::uint64_t>(i));
        const CVector c = random_point(eng, box);
        out.emplace_back(c[0], c[1]);
    }
    return out;
}

// ---- task bodies; each fills `payload` progressively so failures leave a partial report

void run_task(const ExperimentConfig& cfg, const MapExpr& m, json& payload) {
    const DomainSpec dom = resolved_domain(cfg, m.dim());
    switch (cfg.task) {
    case Task::Eval:
    case Task::Jacobian: {
        payload["points"] = json::array();
        for (const auto& z : cfg.points) {
            json row = {{"z", jvector(z)}};
            if (cfg.task == Task::Eval) {
                row["value"] = jvector(eval(m, z));
            } else {
                const Jet jet = jacobian(m, z);
                row["value"] = jvector(jet.value);
                row["jacobian"] = jmatrix(jet.jacobian);
            }
            payload["points"].push_back(std::move(row));
        }
        return;
    }
    case Task::KappaSup: {
        const auto rep = sup_kappa(m, dom, resolved_sampler(cfg));
        payload = {{"sup_estimate", jnum(rep.sup_estimate)},
                   {"argmax_point", jvector(rep.argmax_point)},
                   {"samples_used", rep.samples_used},
                   {"skipped_singular", rep.skipped_singular},
                   {"norm_name", rep.norm_name}};
        return;
    }
    case Task::RefinedSup: {
        const CVector a = cfg.base_point.size() ? cfg.base_point : CVector::zeros(m.dim());
        payload["base_point"] = jvector(a);
        payload["value"] = jnum(refined_sup(m, a, resolved_sampler(cfg)));
        return;
    }
    case Task::BzRun: {
        payload = step_json(bz_step(m, cfg.C, resolved_renorm(cfg)));
        return;
    }
    case Task::BzSequence: {
        const std::string templ = cfg.family.empty() ? cfg.map_text : cfg.family;
        // every member is parsed up front so template errors surface as invalid input
        std::vector<MapExpr> members;
        for (int n : cfg.n_values) members.push_back(parse(instantiate_family(templ, n)));
        const auto outcomes = bz_sequence(
            [&](int n) {
                const auto it = std::find(cfg.n_values.begin(), cfg.n_values.end(), n);
                return members[static_cast<std::size_t>(it - cfg.n_values.begin())];
            },
            cfg.n_values, cfg.C, resolved_renorm(cfg));
        json steps = json::array();
        json series = json::array();
        std::vector<RenormStep> ok_steps;
        for (const auto& o : outcomes) {
            json s = {{"n", o.n}, {"ok", o.step.has_value()}};
            if (o.step) {
                s["step"] = step_json(*o.step);
                series.push_back({{"n", o.n}, {"lambda", jnum(o.step->lambda)}});
                ok_steps.push_back(*o.step);
            } else {
                s["error"] = o.error;
            }
            steps.push_back(std::move(s));
        }
        payload["steps"] = std::move(steps);
        payload["lambda_series"] = std::move(series);
        if (cfg.diagnostic_radius > 0.0) {
            payload["diagnostic"] = {{"radius", jnum(cfg.diagnostic_radius)}, {"grid_per_axis", cfg.diagnostic_grid}};
            const auto d = convergence_diagnostic(ok_steps, cfg.diagnostic_radius, cfg.diagnostic_grid);
            json dj = json::array();
            for (double x : d) dj.push_back(jnum(x));
            payload["diagnostic"]["successive_differences"] = std::move(dj);
        }
        return;
    }
    case Task::Landau: {
        payload = landau_json(landau_estimate(m, dom, resolved_landau(cfg)));
        return;
    }
    case Task::RescaledGrowth: {
        payload["series"] = json::array();
        const auto lcfg = resolved_landau(cfg);
        for (double R : cfg.R_values) {
            const auto pt = rescaled_growth(m, std::span(&R, 1), dom, lcfg).front();
            payload["series"].push_back(
                {{"R", jnum(pt.R)}, {"r_lo", jnum(pt.r_lo)}, {"r_times_rlo", jnum(pt.r_times_rlo)}});
        }
        return;
    }
    case Task::Counterexample: {
        const auto centres = random_centres(derive_seed(cfg.seed, "centres"), cfg.counterexample_centers,
                                            cfg.counterexample_center_radius);
        const auto b = certify_no_ball(m, centres);
        json w = json::array();
        for (const auto& h : b.harris)
            w.push_back({{"alpha0", jcomplex(h.alpha0)},
                         {"beta0", jcomplex(h.beta0)},
                         {"delta", jnum(h.delta)},
                         {"zeta", jcomplex(h.zeta)},
                         {"violation", jnum(h.violation)}});
        for (const auto& d : b.duren_rudin)
            w.push_back({{"u", jcomplex(d.u)},
                         {"v", jcomplex(d.v)},
                         {"delta", jnum(d.delta)},
                         {"theta_star", jnum(d.theta_star)},
                         {"circle_value", jnum(d.circle_value)}});
        payload = {{"map", b.map_text},
                   {"bound", jnum(b.bound)},
                   {"label", b.label},
                   {"centers_checked", b.centers_checked},
                   {"witnesses", std::move(w)}};
        return;
    }
    }
}

} // namespace

std::string_view task_name(Task t) {
    for (const auto& [task, name] : kTaskNames)
        if (task == t) return name;
    return "?";
}

Task task_from_name(std::string_view name) {
    for (const auto& [task, n] : kTaskNames)
        if (n == name) return task;
    std::string known;
    for (const auto& [task, n] : kTaskNames) known += (known.empty() ? "" : ", ") + std::string(n);
    throw ConfigError("unknown task '" + std::string(name) + "' (known: " + known + ")");
}

std::string instantiate_family(std::string_view templ, int n) {
    std::string out;
    const std::string val = std::to_string(n);
    for (std::size_t i = 0; i < templ.size();) {
        if (templ.substr(i, 3) == "{n}") {
            out += val;
            i += 3;
        } else {
            out += templ[i++];
        }
    }
    return out;
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    check_keys(j, "config", {"schema", "map", "domain", "task", "seed", "output", "params"});
    if (!j.contains("schema") || j.at("schema") != kConfigSchema)
        bad("config.schema", "expected \"" + std::string(kConfigSchema) + "\"");
    if (!j.contains("map") || !j.at("map").is_string()) bad("config.map", "required string");
    if (!j.contains("task") || !j.at("task").is_string()) bad("config.task", "required string");
    c.map_text = j.at("map").get<std::string>();
    c.task = task_from_name(j.at("task").get<std::string>());
    if (j.contains("seed")) {
        const auto& sj = j.at("seed");
        if (!sj.is_number_integer() || (!sj.is_number_unsigned() && sj.get<std::int64_t>() < 0))
            bad("config.seed", "expected a non-negative integer");
        c.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("output")) {
        if (!j.at("output").is_string()) bad("config.output", "expected a string");
        c.output = j.at("output").get<std::string>();
    }
    if (j.contains("domain")) {
        const auto& d = j.at("domain");
        check_keys(d, "config.domain", {"shape", "radius"});
        if (d.contains("shape")) {
            const auto s = d.at("shape").get<std::string>();
            if (s == "ball") c.shape = DomainShape::Ball;
            else if (s == "polydisc") c.shape = DomainShape::Polydisc;
            else bad("config.domain.shape", "expected \"ball\" or \"polydisc\"");
        }
        read_opt(d, "radius", c.radius, "config.domain", read_real);
        if (!(c.radius > 0.0)) bad("config.domain.radius", "must be > 0");
    }
    if (j.contains("params")) {
        const auto& p = j.at("params");
        const std::string w = "config.params";
        check_keys(p, w,
                   {"points", "base_point", "C", "family", "n_values", "R_values", "diagnostic", "counterexample",
                    "sampler", "renorm", "newton", "landau"});
        if (p.contains("points")) {
            if (!p.at("points").is_array()) bad(w + ".points", "expected an array of points");
            for (const auto& z : p.at("points")) c.points.push_back(read_vector(z, w + ".points"));
        }
        read_opt(p, "base_point", c.base_point, w, read_vector);
        read_opt(p, "C", c.C, w, read_real);
        if (p.contains("family")) {
            if (!p.at("family").is_string()) bad(w + ".family", "expected a string");
            c.family = p.at("family").get<std::string>();
        }
        if (p.contains("n_values")) {
            if (!p.at("n_values").is_array()) bad(w + ".n_values", "expected an array of integers");
            for (const auto& n : p.at("n_values")) c.n_values.push_back(read_int(n, w + ".n_values"));
        }
        if (p.contains("R_values")) {
            if (!p.at("R_values").is_array()) bad(w + ".R_values", "expected an array of numbers");
            for (const auto& r : p.at("R_values")) {
                const double R = read_real(r, w + ".R_values");
                if (!(R > 0.0)) bad(w + ".R_values", "values must be > 0");
                c.R_values.push_back(R);
            }
        }
        if (p.contains("diagnostic")) {
            const auto& d = p.at("diagnostic");
            check_keys(d, w + ".diagnostic", {"radius", "grid_per_axis"});
            read_opt(d, "radius", c.diagnostic_radius, w + ".diagnostic", read_real);
            read_opt(d, "grid_per_axis", c.diagnostic_grid, w + ".diagnostic", read_int);
        }
        if (p.contains("counterexample")) {
            const auto& d = p.at("counterexample");
            check_keys(d, w + ".counterexample", {"centers", "center_radius"});
            read_opt(d, "centers", c.counterexample_centers, w + ".counterexample", read_int);
            read_opt(d, "center_radius", c.counterexample_center_radius, w + ".counterexample", read_real);
        }
        if (p.contains("sampler")) {
            const auto& s = p.at("sampler");
            const std::string ws = w + ".sampler";
            check_keys(s, ws, {"radial_shells", "points_per_shell", "refine_steps", "exclusion_tolerance"});
            read_opt(s, "radial_shells", c.sampler.radial_shells, ws, read_int);
            read_opt(s, "points_per_shell", c.sampler.points_per_shell, ws, read_int);
            read_opt(s, "refine_steps", c.sampler.refine_steps, ws, read_int);
            read_opt(s, "exclusion_tolerance", c.sampler.exclusion_tolerance, ws, read_real);
        }
        if (p.contains("renorm")) {
            const auto& s = p.at("renorm");
            check_keys(s, w + ".renorm", {"check_radius_factor", "bound_tolerance"});
            read_opt(s, "check_radius_factor", c.check_radius_factor, w + ".renorm", read_real);
            read_opt(s, "bound_tolerance", c.bound_tolerance, w + ".renorm", read_real);
        }
        if (p.contains("newton")) {
            const auto& s = p.at("newton");
            const std::string ws = w + ".newton";
            auto& n = c.landau.inscribed.newton;
            check_keys(s, ws,
                       {"max_iterations", "tolerance", "multistart_count", "continuation_steps", "domain_margin_min"});
            read_opt(s, "max_iterations", n.max_iterations, ws, read_int);
            read_opt(s, "tolerance", n.tolerance, ws, read_real);
            read_opt(s, "multistart_count", n.multistart_count, ws, read_int);
            read_opt(s, "continuation_steps", n.continuation_steps, ws, read_int);
            read_opt(s, "domain_margin_min", n.domain_margin_min, ws, read_real);
        }
        if (p.contains("landau")) {
            const auto& s = p.at("landau");
            const std::string ws = w + ".landau";
            check_keys(s, ws,
                       {"direction_count", "growth_factor", "bisection_steps", "max_growth_steps",
                        "center_candidates", "center_refine_steps"});
            read_opt(s, "direction_count", c.landau.inscribed.direction_count, ws, read_int);
            read_opt(s, "growth_factor", c.landau.inscribed.growth_factor, ws, read_real);
            read_opt(s, "bisection_steps", c.landau.inscribed.bisection_steps, ws, read_int);
            read_opt(s, "max_growth_steps", c.landau.inscribed.max_growth_steps, ws, read_int);
            read_opt(s, "center_candidates", c.landau.center_candidates, ws, read_int);
            read_opt(s, "center_refine_steps", c.landau.center_refine_steps, ws, read_int);
        }
    }
    if (c.sampler.radial_shells < 0 || c.sampler.points_per_shell < 0 || c.sampler.refine_steps < 0)
        bad("config.params.sampler", "counts must be non-negative");
    if (!(c.landau.inscribed.growth_factor > 1.0)) bad("config.params.landau.growth_factor", "must be > 1");
    if (!(c.C >= 1.0)) bad("config.params.C", "must be >= 1");
    return c;
}

json config_to_json(const ExperimentConfig& c) {
    json points = json::array();
    for (const auto& z : c.points) points.push_back(jvector(z));
    json n_values = c.n_values;
    json R_values = json::array();
    for (double r : c.R_values) R_values.push_back(r);
    const auto& n = c.landau.inscribed.newton;
    const auto& ins = c.landau.inscribed;
    json params = {
        {"points", std::move(points)},
        {"base_point", jvector(c.base_point)},
        {"C", c.C},
        {"family", c.family},
        {"n_values", std::move(n_values)},
        {"R_values", std::move(R_values)},
        {"diagnostic", {{"radius", c.diagnostic_radius}, {"grid_per_axis", c.diagnostic_grid}}},
        {"counterexample", {{"centers", c.counterexample_centers}, {"center_radius", c.counterexample_center_radius}}},
        {"sampler",
         {{"radial_shells", c.sampler.radial_shells},
          {"points_per_shell", c.sampler.points_per_shell},
          {"refine_steps", c.sampler.refine_steps},
          {"exclusion_tolerance", c.sampler.exclusion_tolerance}}},
        {"renorm", {{"check_radius_factor", c.check_radius_factor}, {"bound_tolerance", c.bound_tolerance}}},
        {"newton",
         {{"max_iterations", n.max_iterations},
          {"tolerance", n.tolerance},
          {"multistart_count", n.multistart_count},
          {"continuation_steps", n.continuation_steps},
          {"domain_margin_min", n.domain_margin_min}}},
        {"landau",
         {{"direction_count", ins.direction_count},
          {"growth_factor", ins.growth_factor},
          {"bisection_steps", ins.bisection_steps},
          {"max_growth_steps", ins.max_growth_steps},
          {"center_candidates", c.landau.center_candidates},
          {"center_refine_steps", c.landau.center_refine_steps}}},
    };
    json j = {{"schema", kConfigSchema},
              {"map", c.map_text},
              {"domain", {{"shape", std::string(shape_name(c.shape))}, {"radius", c.radius}}},
              {"task", std::string(task_name(c.task))},
              {"seed", c.seed},
              {"params", std::move(params)}};
    if (!c.output.empty()) j["output"] = c.output;
    return j;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    return config_from_json(j);
}

SamplerConfig resolved_sampler(const ExperimentConfig& cfg) {
    SamplerConfig s = cfg.sampler;
    s.rng_seed = derive_seed(cfg.seed, "sampler");
    return s;
}

RenormConfig resolved_renorm(const ExperimentConfig& cfg) {
    return RenormConfig{resolved_sampler(cfg), cfg.check_radius_factor, cfg.bound_tolerance};
}

LandauConfig resolved_landau(const ExperimentConfig& cfg) {
    LandauConfig l = cfg.landau;
    l.inscribed.newton.rng_seed = derive_seed(cfg.seed, "newton");
    return l;
}

DomainSpec resolved_domain(const ExperimentConfig& cfg, std::size_t dim) { return {cfg.shape, cfg.radius, dim}; }

RunOutcome run_experiment(const ExperimentConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    RunOutcome out;
    json payload = json::object();
    out.report = {{"schema", kReportSchema},
                  {"version", kVersion},
                  {"norm_name", std::string(kNormName)},
                  {"config", config_to_json(cfg)}};
    try {
        const MapExpr m = parse(cfg.map_text);
        run_task(cfg, m, payload);
        out.report["status"] = "ok";
    } catch (const InvalidArgument& e) {
        out.exit_code = 2;
        out.report["status"] = "invalid-input";
        out.report["error"] = e.what();
        payload = json::object();
    } catch (const Error& e) {
        out.exit_code = 3;
        out.report["status"] = "numerical-failure";
        out.report["error"] = e.what();
    }
    out.report["payload"] = std::move(payload);
    out.report["wall_time_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

std::string emit_series(const json& report, EmitFormat format) {
    if (!report.contains("payload") || !report.contains("config"))
        throw UnsupportedPayload("not a report: missing payload or config");
    const json& p = report.at("payload");
    if (format == EmitFormat::Structured) return p.dump(2) + "\n";

    auto num = [](const json& v) -> std::string {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number_integer()) return std::to_string(v.get<long long>());
        return format_real(v.get<double>());
    };
    const std::string task = report.at("config").value("task", "");
    std::ostringstream out;
    if (task == "bz-sequence" && p.contains("lambda_series")) {
        out << "n,lambda\n";
        for (const auto& r : p.at("lambda_series")) out << num(r.at("n")) << "," << num(r.at("lambda")) << "\n";
        return out.str();
    }
    if (task == "rescaled-growth" && p.contains("series")) {
        out << "R,r_times_rlo\n";
        for (const auto& r : p.at("series")) out << num(r.at("R")) << "," << num(r.at("r_times_rlo")) << "\n";
        return out.str();
    }
    if (task == "landau" && p.contains("r_lo")) {
        out << "radius,all_certified\n" << num(p.at("r_lo")) << ",true\n";
        return out.str();
    }
    throw UnsupportedPayload("rows format is not available for task '" + task + "'");
}

} // namespace holo
