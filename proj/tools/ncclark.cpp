// ncclark command-line front end.  Every subcommand writes one JSON document
// (or a pretty listing) to stdout.

#include <cstdlib>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ncclark/clark.hpp"
#include "ncclark/examples.hpp"
#include "ncclark/fock.hpp"
#include "ncclark/json_io.hpp"
#include "ncclark/singularity.hpp"
#include "ncclark/sl_det.hpp"
#include "reproduce.hpp"

using namespace ncclark;

namespace {

struct Options {
    double tol = kDefaultTol;
    std::uint64_t seed = kDefaultSeed;
    int maxdeg = 4;
    int samples = 20;
    std::string format = "json";
    bool pretty = false;

    std::string expr;
    int d = 0;
    std::string fm_file, seed_file, tuple_file, point_file;
    std::string lambda = "1", zeta = "1", points;
    int n = 2;
    int k = 200;
    int L = 6;
};

Json read_input(const std::string& path)
{
    if (path != "-")
        return read_json_file(path);
    std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("stdin: ") + e.what());
    }
}

cplx parse_complex(const std::string& s)
{
    std::istringstream in(s);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(in >> re))
        throw InputError("cannot read complex number \"" + s + "\" (want re or re,im)");
    if (in >> comma) {
        if (comma != ',' || !(in >> im))
            throw InputError("cannot read complex number \"" + s + "\" (want re or re,im)");
    }
    return {re, im};
}

std::vector<cplx> parse_points(const std::string& s)
{
    std::vector<cplx> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ';'))
        if (!item.empty())
            out.push_back(parse_complex(item));
    return out;
}

int expr_arity(const Options& o, const ExprPtr& e)
{
    return o.d > 0 ? o.d : std::max(1, max_var(e));
}

ClarkSeed load_seed(const Options& o)
{
    if (o.seed_file.empty())
        throw InputError("--seed FILE is required");
    return seed_from_json(read_input(o.seed_file));
}

FMRealization load_fm(const Options& o)
{
    if (!o.expr.empty()) {
        if (o.d <= 0)
            throw InputError("--d is required with --expr");
        return expr_to_fm(parse(o.expr, o.d), o.d);
    }
    if (!o.fm_file.empty())
        return fm_from_json(read_input(o.fm_file));
    if (!o.seed_file.empty())
        return minratreal_fm(load_seed(o), o.tol);
    throw InputError("one of --expr, --fm or --seed is required");
}

Json series_json(const std::map<Word, cplx>& m)
{
    Json a = Json::array();
    for (const auto& [w, v] : m)
        a.push_back(Json{{"word", to_json(w)}, {"value", to_json(v)}});
    return a;
}

Json cmd_parse(const Options& o)
{
    if (o.expr.empty())
        throw InputError("--expr is required");
    ExprPtr e = parse(o.expr, o.d > 0 ? o.d : 64);
    return Json{{"ast", expr_to_json(e)},
                {"text", to_string(e)},
                {"max_var", max_var(e)},
                {"regular_at_zero", regular_at_zero(e)}};
}

Json cmd_eval(const Options& o)
{
    std::optional<ExprPtr> e;
    std::optional<FMRealization> f;
    int d = 0;
    if (!o.expr.empty()) {
        e = parse(o.expr, o.d > 0 ? o.d : 64);
        d = expr_arity(o, *e);
    } else {
        f = load_fm(o);
        d = f->d();
    }
    MatrixTuple z;
    if (!o.point_file.empty()) {
        z = tuple_from_json(read_input(o.point_file));
    } else {
        Rng rng(o.seed);
        z = rng.row_contraction(d, o.n, 0.5);
    }
    if (z.d() != d)
        throw ArityError(fmt::format("point has {} components, expected {}", z.d(), d));
    Mat v = e ? eval_expr(*e, z) : transfer_eval(*f, z);
    return Json{{"point", to_json(z)}, {"value", to_json(v)}};
}

Json cmd_realize(const Options& o)
{
    if (o.expr.empty())
        throw InputError("--expr is required");
    return to_json(load_fm(o));
}

Json cmd_spr(const Options& o)
{
    MatrixTuple a;
    if (!o.tuple_file.empty())
        a = tuple_from_json(read_input(o.tuple_file));
    else
        a = load_fm(o).A;
    if (a.n() == 0)
        return Json{{"spr", 0.0}, {"n", 0}};
    return Json{{"spr", joint_spectral_radius(a)},
                {"beurling", beurling_iterate(a, o.k)},
                {"k", o.k},
                {"row_norm", row_norm(a)},
                {"col_norm", col_norm(a)},
                {"pure", is_pure(a, o.tol)},
                {"n", a.n()}};
}

Json cmd_membership(const Options& o)
{
    Membership m = fock_membership(load_fm(o), o.tol);
    Json j{{"member", m.member}, {"spr", m.spr}, {"min_dim", m.min_dim}};
    j["radius"] = m.radius ? Json(*m.radius) : Json();
    return j;
}

Json cmd_inner(const Options& o)
{
    FMRealization f = load_fm(o);
    if (!f.minimal)
        f = minimize(f);
    InnerCertificate c = inner_certificate(f, o.tol);
    return Json{{"inner", c.inner}, {"h2", c.h2}, {"phi_norm", c.phi_norm}};
}

Json cmd_clark_moments(const Options& o)
{
    ClarkSeed s = load_seed(o);
    check_seed(s, o.tol);
    return Json{{"b0", to_json(seed_b0(s))},
                {"moments", series_json(moments(s, words_up_to(s.T.d(), o.maxdeg)))}};
}

Json cmd_clark_family(const Options& o)
{
    ClarkSeed s = load_seed(o);
    cplx l = parse_complex(o.lambda);
    MatrixTuple t = clark_family(s, l, o.tol);
    return Json{{"lambda", to_json(l)},
                {"family", to_json(t)},
                {"row_coisometry", is_row_coisometry(adjoint_tuple(t), o.tol)}};
}

Json cmd_clark_classify(const Options& o)
{
    ClassifyReport r = classify(load_seed(o), o.tol);
    Json cyc{{"tstar_cyclic", r.cyclicity.tstar_cyclic}, {"t_cyclic", r.cyclicity.t_cyclic}};
    cyc["v_cyclic"] = r.cyclicity.v_cyclic ? Json(*r.cyclicity.v_cyclic) : Json();
    return Json{{"pure_rank", r.pure_rank},
                {"singular", r.singular},
                {"ktilde_dim", r.ktilde_dim},
                {"dilation_summands", r.dilation_summands},
                {"ac_part_present", r.ac_part_present},
                {"vn_type_absent", r.vn_type_absent},
                {"cuntz_type_l_absent", r.cuntz_type_l_absent},
                {"cyclicity", cyc}};
}

Json cmd_ad_report(const Options& o)
{
    ClarkSeed s = load_seed(o);
    NcadReport r = ncad_report(s, parse_points(o.points), o.tol);
    Json pts = Json::array();
    for (cplx p : r.points)
        pts.push_back(to_json(p));
    Json j{{"n", r.n},
           {"points", pts},
           {"singular", r.singular},
           {"irreducible", r.irreducible},
           {"dilation_irreducible", r.dilation_irreducible},
           {"singular_to_all", r.singular_to_all},
           {"clause_holds", r.clause_holds},
           {"inner", r.inner},
           {"level_one_nonzero", r.level_one_nonzero}};
    j["irreducible_clause"] = r.irreducible_clause ? Json(*r.irreducible_clause) : Json();
    return j;
}

Json cmd_sl_check(const Options& o)
{
    FMRealization f = load_fm(o);
    auto pts = sl_samples(f, o.samples, o.seed);
    SlCheck c = sl_condition_check(f, pts, o.L, o.tol);
    DetProbe p = det_constancy_direct(f, pts);
    return Json{{"residual_by_level", c.residual_by_level},
                {"max_residual", c.max_residual},
                {"constant_deviation", c.constant_deviation},
                {"holds", c.holds},
                {"det_max_deviation", p.max_dev},
                {"det_evaluated", p.evaluated},
                {"det_skipped", p.skipped},
                {"det_constant", p.evaluated > 0 && p.max_dev < o.tol}};
}

Json cmd_boundary(const Options& o)
{
    ClarkSeed s = load_seed(o);
    cplx z = parse_complex(o.zeta);
    FMRealization b = minratreal_fm(s, o.tol);
    EigencheckReport r = boundary_eigencheck(b, clark_point(s, z, o.tol), z, o.tol);
    CoisometricRestrictions cr = coisometric_restrictions(clark_point(s, z, o.tol), o.tol);
    Json pieces = Json::array();
    for (std::size_t i = 0; i < r.pieces.size(); ++i) {
        const PieceEigen& pe = r.pieces[i];
        Json pj{{"dim", pe.dim}, {"evaluated", pe.evaluated}, {"distance", pe.distance}};
        if (!pe.error.empty())
            pj["error"] = pe.error;
        if (pe.evaluated && i < cr.pieces.size()) {
            const MatrixTuple& f = cr.pieces[i].F;
            Mat bt = transfer_eval(b, transpose_tuple(f)).transpose();
            Eigen::ComplexEigenSolver<Mat> es(bt);
            Eigen::Index best = 0;
            for (Eigen::Index k = 1; k < es.eigenvalues().size(); ++k)
                if (std::abs(es.eigenvalues()(k) - z) < std::abs(es.eigenvalues()(best) - z))
                    best = k;
            Vec v = es.eigenvectors().col(best).normalized();
            try {
                BoundaryLimit bl = boundary_limit(b, f, v, v);
                pj["limit"] = Json{{"last_value", to_json(bl.values.back())},
                                   {"last_increment", bl.last_increment},
                                   {"kernel_norm_bound", bl.kernel_norm_bound},
                                   {"eigenvalue", to_json(bl.eigenvalue)}};
            } catch (const Error& e) {
                pj["limit"] = Json{{"error", Json{{"kind", e.kind()}, {"message", e.what()}}}};
            }
        }
        pieces.push_back(pj);
    }
    return Json{{"zeta", to_json(z)},
                {"pieces", pieces},
                {"geometric_multiplicity", r.geometric_multiplicity},
                {"holds", r.holds}};
}

void emit(const Options& o, const Json& j)
{
    if (o.pretty || o.format == "pretty")
        std::cout << pretty_dump(j);
    else
        std::cout << canonical_dump(j) << "\n";
}

int report_error(const Options& o, const std::string& kind, const std::string& msg, int code)
{
    emit(o, Json{{"error", Json{{"kind", kind}, {"message", msg}}}});
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    Options o;
    if (const char* env = std::getenv("NCCLARK_TOL")) {
        try {
            o.tol = std::stod(env);
        } catch (const std::exception&) {
            std::cerr << "ncclark: ignoring unreadable NCCLARK_TOL=" << env << "\n";
        }
    }

    CLI::App app{"ncclark: noncommutative rational multipliers and Clark measures"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--tol", o.tol, "numerical tolerance (default NCCLARK_TOL or 1e-9)");
    app.add_option("--prng-seed", o.seed, "seed for every random draw");
    app.add_option("--maxdeg", o.maxdeg, "maximal word length")->check(CLI::NonNegativeNumber);
    app.add_option("--samples", o.samples, "sample count")->check(CLI::PositiveNumber);
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "pretty"}));
    app.add_flag("--pretty", o.pretty, "same as --format pretty");

    auto add_expr = [&](CLI::App* c) {
        c->add_option("--expr", o.expr, "rational expression in z1..zd (x, y when d = 2)");
        c->add_option("--d", o.d, "number of variables")->check(CLI::PositiveNumber);
    };
    auto add_fm = [&](CLI::App* c) {
        add_expr(c);
        c->add_option("--fm", o.fm_file, "FM realization JSON ('-' for stdin)");
        c->add_option("--seed", o.seed_file, "Clark seed JSON; uses its minimal realization");
    };

    std::string which;
    auto sub = [&](const char* name, const char* help) {
        CLI::App* c = app.add_subcommand(name, help);
        c->callback([&which, name] { which = name; });
        return c;
    };

    add_expr(sub("parse", "parse an expression and print its syntax tree"));
    CLI::App* ev = sub("eval", "evaluate at a matrix point");
    add_fm(ev);
    ev->add_option("--point", o.point_file, "tuple JSON (default: random contractive point)");
    ev->add_option("--n", o.n, "size of the random point")->check(CLI::PositiveNumber);
    add_expr(sub("realize", "compile an expression to a minimal FM realization"));
    add_fm(sub("minimize", "minimize a realization"));
    add_fm(sub("coeffs", "power series coefficients up to --maxdeg"));
    CLI::App* sp = sub("spr", "joint spectral radius");
    add_fm(sp);
    sp->add_option("--tuple", o.tuple_file, "tuple JSON");
    sp->add_option("--k", o.k, "Beurling iterate order")->check(CLI::PositiveNumber);
    add_fm(sub("membership", "Fock space membership"));
    add_fm(sub("inner", "inner certificate"));

    CLI::App* clark_cmd = app.add_subcommand("clark", "Clark seeds");
    clark_cmd->require_subcommand(1);
    auto clark_sub = [&](const char* name, const char* help) {
        CLI::App* c = clark_cmd->add_subcommand(name, help);
        c->add_option("--seed", o.seed_file, "Clark seed JSON ('-' for stdin)")->required();
        c->callback([&which, name] { which = std::string("clark ") + name; });
        return c;
    };
    clark_sub("moments", "moments <x, T^w x> up to --maxdeg");
    clark_sub("family", "Clark perturbation at --lambda")
        ->add_option("--lambda", o.lambda, "complex parameter re[,im]");
    clark_sub("build", "minimal realization of the Cayley transform");
    clark_sub("classify", "type decomposition report");

    CLI::App* ad = sub("ad-report", "singularity of Clark family members");
    ad->add_option("--seed", o.seed_file, "Clark seed JSON")->required();
    ad->add_option("--points", o.points, "points re,im;re,im;... (default n+1 on the circle)");
    CLI::App* sl = sub("sl-check", "trace condition and determinant constancy");
    add_fm(sl);
    sl->add_option("--L", o.L, "highest level")->check(CLI::PositiveNumber);
    CLI::App* bd = sub("boundary", "boundary eigenvalue check at --zeta");
    bd->add_option("--seed", o.seed_file, "Clark seed JSON")->required();
    bd->add_option("--zeta", o.zeta, "point on the circle re[,im]");
    sub("reproduce", "replay the worked examples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Json out;
        if (which == "parse")
            out = cmd_parse(o);
        else if (which == "eval")
            out = cmd_eval(o);
        else if (which == "realize")
            out = cmd_realize(o);
        else if (which == "minimize")
            out = to_json(minimize(load_fm(o)));
        else if (which == "coeffs")
            out = to_json(coefficients(load_fm(o), o.maxdeg));
        else if (which == "spr")
            out = cmd_spr(o);
        else if (which == "membership")
            out = cmd_membership(o);
        else if (which == "inner")
            out = cmd_inner(o);
        else if (which == "clark moments")
            out = cmd_clark_moments(o);
        else if (which == "clark family")
            out = cmd_clark_family(o);
        else if (which == "clark build")
            out = to_json(minratreal_fm(load_seed(o), o.tol));
        else if (which == "clark classify")
            out = cmd_clark_classify(o);
        else if (which == "ad-report")
            out = cmd_ad_report(o);
        else if (which == "sl-check")
            out = cmd_sl_check(o);
        else if (which == "boundary")
            out = cmd_boundary(o);
        else if (which == "reproduce")
            out = tools::reproduce_examples(o.seed);
        else
            return report_error(o, "UsageError", "no subcommand", 2);
        emit(o, out);
        if (which == "reproduce" && !out.at("all_pass").get<bool>())
            return 1;
        return 0;
    } catch (const InputError& e) {
        return report_error(o, e.kind(), e.what(), 2);
    } catch (const Error& e) {
        return report_error(o, e.kind(), e.what(), 1);
    } catch (const Json::exception& e) {
        return report_error(o, "InputError", e.what(), 2);
    }
}
