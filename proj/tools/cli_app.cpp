#include "cli_app.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "magnus/acceptance.hpp"
#include "magnus/developments.hpp"
#include "magnus/errors.hpp"
#include "magnus/geometry.hpp"
#include "magnus/growth_bound.hpp"
#include "magnus/magnus_series.hpp"
#include "magnus/matrix_log.hpp"
#include "magnus/measures.hpp"
#include "magnus/shells.hpp"

namespace magnus::cli {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "1.0.0";
constexpr int kDigits = 12;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string num(double x) {
    std::ostringstream s;
    s.imbue(std::locale::classic());
    s << std::setprecision(kDigits) << x;
    return s.str();
}

// Rounded to the CSV precision so JSON and CSV agree digit for digit.
json jnum(double x) {
    if (!std::isfinite(x)) return x > 0 ? json("inf") : x < 0 ? json("-inf") : json(nullptr);
    return std::stod(num(x));
}

json jmat(const Mat2& m) { return json::array({json::array({jnum(m.a), jnum(m.b)}), json::array({jnum(m.c), jnum(m.d)})}); }

void csv_row(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << "\n";
}

Mat2 to_mat(const std::vector<double>& v) { return {v[0], v[1], v[2], v[3]}; }

MeasureSpec read_measure(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read measure file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return measure_from_json(buf.str());
}

json class_json(const MagnusClass& c) {
    json dirs = json::array();
    for (double d : c.directions) dirs.push_back(jnum(d));
    return {{"kind", kind_name(c.kind)}, {"mp", jnum(c.mp)}, {"directions", dirs}};
}

json normal_form_json(const Mat2& a) {
    const MagnusClass c = classify(a);
    json j = class_json(c);
    const NormalForm nf = nw_decompose(a);
    j["p1"] = jnum(nf.p1);
    j["p2"] = jnum(nf.p2);
    j["t"] = jnum(nf.t);
    j["frame"] = jmat(nf.F);
    j["frame_angle"] = jnum(frame_angle(nf.F));
    j["mirror"] = nf.mirror;
    j["quasicomplex"] = nf.quasicomplex;
    return j;
}

// Family parameters in command-line order.
struct Family {
    std::string name;
    std::vector<std::string> params;
    DevelopmentId (*make)(const std::vector<double>&);
};

const std::vector<Family>& families() {
    static const std::vector<Family> all{
        {"skew-loxodromic", {"alpha", "beta"}, [](const std::vector<double>& v) -> DevelopmentId { return dev::SkewLoxodromic{v[0], v[1]}; }},
        {"skew-elliptic", {"alpha", "beta"}, [](const std::vector<double>& v) -> DevelopmentId { return dev::SkewElliptic{v[0], v[1]}; }},
        {"critical", {"t"}, [](const std::vector<double>& v) -> DevelopmentId { return dev::Critical{v[0]}; }},
        {"parabolic", {"p"}, [](const std::vector<double>& v) -> DevelopmentId { return dev::Parabolic{v[0]}; }},
        {"elliptic", {"h", "p"}, [](const std::vector<double>& v) -> DevelopmentId { return dev::Elliptic{v[0], v[1]}; }},
        {"hyperbolic", {"t", "p"}, [](const std::vector<double>& v) -> DevelopmentId { return dev::Hyperbolic{v[0], v[1]}; }},
    };
    return all;
}

const Family& find_family(const std::string& name) {
    for (const Family& f : families())
        if (f.name == name) return f;
    std::string known;
    for (const Family& f : families()) known += (known.empty() ? "" : ", ") + f.name;
    throw UsageError("unknown example '" + name + "' (known: " + known + ")");
}

std::vector<std::string> example_row(const Family& fam, const std::vector<double>& values, bool tolerate) {
    std::vector<std::string> row;
    for (double v : values) row.push_back(num(v));
    const DevelopmentId id = fam.make(values);
    std::string norm;
    try {
        norm = num(mu_norm(id));
    } catch (const LogabilityError&) {
        if (!tolerate) throw;
        norm = "nan";
    }
    row.push_back(norm);
    row.push_back(num(total_variation(development_measure(id))));
    row.push_back(kind_name(classify(development_matrix(id)).kind));
    return row;
}

void cmd_example(std::ostream& out, const std::string& name, const std::vector<double>& params,
                 const std::vector<std::string>& sweep) {
    const Family& fam = find_family(name);
    std::vector<double> values = params;
    if (values.size() > fam.params.size()) throw UsageError("example '" + name + "' takes " + std::to_string(fam.params.size()) + " parameters");
    std::vector<std::string> header = fam.params;
    header.insert(header.end(), {"mu_norm", "total_variation", "kind"});
    if (sweep.empty()) {
        if (values.size() != fam.params.size()) throw UsageError("example '" + name + "' needs --params for every parameter");
        csv_row(out, header);
        csv_row(out, example_row(fam, values, false));
        return;
    }
    std::size_t var = fam.params.size();
    for (std::size_t i = 0; i < fam.params.size(); ++i)
        if (fam.params[i] == sweep[0]) var = i;
    if (var == fam.params.size()) throw UsageError("example '" + name + "' has no parameter '" + sweep[0] + "'");
    double lo = 0;
    double hi = 0;
    int n = 0;
    try {
        lo = std::stod(sweep[1]);
        hi = std::stod(sweep[2]);
        n = std::stoi(sweep[3]);
    } catch (const std::exception&) {
        throw UsageError("--sweep expects VAR MIN MAX N");
    }
    if (n < 1) throw UsageError("--sweep needs N >= 1");
    // The swept parameter may be omitted from --params; the rest must be there.
    if (values.size() + 1 == fam.params.size() && var == values.size()) values.push_back(0.0);
    if (values.size() != fam.params.size()) throw UsageError("example '" + name + "' needs --params for the fixed parameters");
    csv_row(out, header);
    for (int k = 0; k < n; ++k) {
        values[var] = n == 1 ? lo : lo + (hi - lo) * k / (n - 1);
        csv_row(out, example_row(fam, values, true));
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{std::string("magnus ") + kVersion + ": Magnus expansion, matrix logarithm and conformal range tools for real 2x2 matrices"};
    app.name("magnus");
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::vector<double> matrix;
    auto add_matrix = [&matrix](CLI::App* sub, bool required) {
        CLI::Option* o = sub->add_option("--matrix", matrix, "Row-major entries a b c d")->expected(4)->allow_extra_args(false);
        if (required) o->required();
        return o;
    };

    CLI::App* norm = app.add_subcommand("norm", "Operator norm and signed co-norm");
    add_matrix(norm, true);

    std::string format = "json";
    CLI::App* log = app.add_subcommand("log", "Principal logarithm");
    add_matrix(log, true);
    log->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

    int samples = 200;
    CLI::App* shell = app.add_subcommand("shell", "Conformal-range boundary polylines as CSV");
    add_matrix(shell, true);
    shell->add_option("--samples", samples, "Samples per branch")->check(CLI::Range(2, 1000000));

    double p = 0;
    std::vector<double> grid;
    CLI::App* hb = app.add_subcommand("hbound", "Growth bound H(p)");
    CLI::Option* p_opt = hb->add_option("--p", p, "Single p in [0, pi)");
    CLI::Option* grid_opt = hb->add_option("--grid", grid, "MIN MAX N")->expected(3);
    p_opt->excludes(grid_opt);
    hb->require_option(1);

    std::string file;
    int order = 0;
    double tscale = 1.0;
    CLI::App* terms = app.add_subcommand("magnus-terms", "Magnus terms of a measure as CSV");
    terms->add_option("FILE", file, "Measure file")->required();
    terms->add_option("--order", order, "Number of terms")->required()->check(CLI::Range(1, 1024));
    CLI::Option* t_opt = terms->add_option("--t", tscale, "Scale the measure by T");

    int steps = 0;
    CLI::App* lx = app.add_subcommand("lexp", "Left-ordered exponential of a measure");
    lx->add_option("FILE", file, "Measure file")->required();
    CLI::Option* steps_opt = lx->add_option("--numeric-steps", steps, "Also integrate numerically")->check(CLI::PositiveNumber);

    std::vector<CLI::App*> geometry_cmds;
    for (const char* name : {"mp", "classify", "normal-form"}) {
        CLI::App* sub = app.add_subcommand(name, std::string(name) + " of a matrix or of lexp of a measure");
        CLI::Option* m = add_matrix(sub, false);
        CLI::Option* f = sub->add_option("--measure", file, "Measure file");
        m->excludes(f);
        sub->require_option(1);
        geometry_cmds.push_back(sub);
    }

    std::string example_name;
    std::vector<double> params;
    std::vector<std::string> sweep;
    CLI::App* ex = app.add_subcommand("example", "Closed-form example families as CSV");
    ex->add_option("NAME", example_name, "skew-loxodromic | skew-elliptic | critical | parabolic | elliptic | hyperbolic")->required();
    ex->add_option("--params", params, "Family parameters in order");
    ex->add_option("--sweep", sweep, "VAR MIN MAX N")->expected(4);

    std::string filter;
    CLI::App* self = app.add_subcommand("selftest", "Run the acceptance checks");
    self->add_option("--filter", filter, "Only criteria whose name contains PATTERN");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Help and version print through exit() and succeed; every other parse failure is a usage error.
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }

    try {
        if (*norm) {
            const Mat2 m = to_mat(matrix);
            out << json{{"norm", jnum(op_norm(m))}, {"conorm", jnum(signed_conorm(m))}}.dump() << "\n";
        } else if (*log) {
            const Mat2 l = log2(to_mat(matrix));
            if (format == "csv") {
                csv_row(out, {"m11", "m12", "m21", "m22", "norm", "conorm", "chirality"});
                csv_row(out, {num(l.a), num(l.b), num(l.c), num(l.d), num(op_norm(l)), num(signed_conorm(l)),
                              std::to_string(chirality(l))});
            } else {
                out << json{{"log", jmat(l)},
                            {"norm", jnum(op_norm(l))},
                            {"conorm", jnum(signed_conorm(l))},
                            {"chirality", chirality(l)}}
                           .dump()
                    << "\n";
            }
        } else if (*shell) {
            const Mat2 m = to_mat(matrix);
            const double center = m.trace() / 2;
            const double scale = std::max(1.0, op_norm(m - center * Mat2::identity()));
            const auto pts = envelope_polyline(shifted_norm_square(m, NormBranch::Norm), shifted_norm_square(m, NormBranch::Conorm), center, scale, samples);
            csv_row(out, {"lambda", "re", "im", "branch"});
            for (const EnvelopeSample& s : pts) csv_row(out, {num(s.lambda), num(s.point.real()), num(s.point.imag()), s.branch});
        } else if (*hb) {
            if (*p_opt) {
                const HBoundReport r = h_bound(p);
                out << json{{"p", jnum(r.p)},
                            {"H", jnum(r.H)},
                            {"boundary", jnum(r.boundary_terms)},
                            {"integral", jnum(r.integral)},
                            {"quadrature_error_estimate", jnum(r.quadrature_error_estimate)}}
                           .dump()
                    << "\n";
            } else {
                const int n = static_cast<int>(grid[2]);
                if (n < 1 || grid[2] != n) throw UsageError("--grid expects MIN MAX N with integer N >= 1");
                csv_row(out, {"p", "H", "boundary", "integral"});
                for (int k = 0; k < n; ++k) {
                    const double pk = n == 1 ? grid[0] : grid[0] + (grid[1] - grid[0]) * k / (n - 1);
                    const HBoundReport r = h_bound(pk);
                    csv_row(out, {num(pk), num(r.H), num(r.boundary_terms), num(r.integral)});
                }
            }
        } else if (*terms) {
            MeasureSpec phi = read_measure(file);
            if (*t_opt) phi = phi.scaled(tscale);
            const double tv = total_variation(phi);
            const std::vector<Mat2> mu = magnus_terms(phi, order);
            csv_row(out, {"k", "norm", "bound", "m11", "m12", "m21", "m22"});
            for (int k = 1; k <= order; ++k) {
                const Mat2& m = mu[static_cast<std::size_t>(k)];
                csv_row(out, {std::to_string(k), num(op_norm(m)), num(magnus_term_bound(k, tv)), num(m.a), num(m.b), num(m.c), num(m.d)});
            }
        } else if (*lx) {
            const MeasureSpec phi = read_measure(file);
            const Mat2 a = lexp(phi);
            json j{{"lexp", jmat(a)}, {"total_variation", jnum(total_variation(phi))}, {"length", jnum(phi.length())}};
            if (*steps_opt) {
                const Mat2 b = lexp_numeric(phi, steps);
                j["numeric"] = jmat(b);
                j["numeric_difference"] = jnum(max_abs(a - b));
            }
            out << j.dump() << "\n";
        } else if (*ex) {
            cmd_example(out, example_name, params, sweep);
        } else if (*self) {
            const auto results = run_acceptance(filter);
            if (results.empty()) throw UsageError("no criterion matches '" + filter + "'");
            return report_acceptance(results, out) == 0 ? 0 : 3;
        } else {
            for (CLI::App* sub : geometry_cmds) {
                if (!*sub) continue;
                const Mat2 a = matrix.empty() ? lexp(read_measure(file)) : to_mat(matrix);
                const std::string name = sub->get_name();
                if (name == "mp") {
                    const MagnusClass c = classify(a);
                    out << json{{"kind", kind_name(c.kind)}, {"mp", jnum(c.mp)}}.dump() << "\n";
                } else if (name == "classify") {
                    out << class_json(classify(a)).dump() << "\n";
                } else {
                    out << normal_form_json(a).dump() << "\n";
                }
            }
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace magnus::cli
