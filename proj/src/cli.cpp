#include "hypermod/cli.hpp"

#include "hypermod/cohomology.hpp"
#include "hypermod/haefliger.hpp"
#include "hypermod/hrr.hpp"
#include "hypermod/io.hpp"
#include "hypermod/ranges.hpp"
#include "hypermod/stable.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <optional>
#include <sstream>

namespace hypermod {

namespace {

enum class Format { human, json };

struct Options {
    std::string input;
    std::string builtin_name;
    std::string alpha;
    bool assert_ample = false;
    std::string format = "human";
    int max_degree = -1;
    std::optional<int> jet_bound;
    std::optional<int> power;
    std::optional<int> curve_genus;
    std::optional<int> degree;
    std::vector<int> toric;
    std::string bundle = "0";
};

Format format_of(const Options& o) { return o.format == "json" ? Format::json : Format::human; }

VarietyData load(const Options& o)
{
    if (!o.builtin_name.empty() && !o.input.empty())
        throw InputError(InputError::Kind::schema, "give either an input file or --builtin, not both");
    VarietyData v;
    if (!o.builtin_name.empty()) {
        try {
            v = builtin(o.builtin_name);
        } catch (const std::invalid_argument& e) {
            throw InputError(InputError::Kind::schema, e.what());
        }
    } else if (!o.input.empty()) {
        v = parse_variety_file(o.input);
    } else {
        throw InputError(InputError::Kind::schema, "no variety given (input file or --builtin)");
    }
    if (!o.alpha.empty())
        v = with_alpha(std::move(v), parse_divisor_class(v.ring, o.alpha));
    if (o.assert_ample)
        v.ampleness_asserted = true;
    return v;
}

std::string join(const auto& values, const char* sep = " ")
{
    std::ostringstream ss;
    bool first = true;
    for (const auto& x : values) {
        if (!first)
            ss << sep;
        ss << x;
        first = false;
    }
    return ss.str();
}

std::string polynomial_string(const UnivariatePolynomial& p)
{
    std::string s;
    const auto& c = p.coefficients();
    for (int k = p.degree(); k >= 0; --k) {
        const Rational& a = c[static_cast<std::size_t>(k)];
        if (a == 0)
            continue;
        const bool neg = a < 0;
        const Rational mag = neg ? Rational(-a) : a;
        if (s.empty())
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        const bool show = k == 0 || mag != 1;
        if (show)
            s += format_rational(mag);
        if (k > 0)
            s += std::string(show ? " " : "") + "m" + (k > 1 ? "^" + std::to_string(k) : "");
    }
    return s.empty() ? "0" : s;
}

void print_range(std::ostream& out, Format f, const RangeReport& r)
{
    if (f == Format::json) {
        out << to_json(r).dump() << '\n';
        return;
    }
    out << "d " << (r.exact ? "= " : ">= ") << r.jet_bound << " (" << to_string(r.source) << ", "
        << (r.exact ? "exact" : "lower bound") << "), max homology degree " << r.max_valid_degree
        << (r.max_valid_degree < 0 ? " (empty range)" : "") << '\n';
    if (!r.assumptions.empty()) {
        out << "assumptions:\n";
        for (const auto& a : r.assumptions)
            out << "  - " << a << '\n';
    }
}

CohomologyOptions cohomology_options() { return CohomologyOptions{max_monomials_from_env()}; }

int cmd_validate(const Options& o, std::ostream& out)
{
    try {
        const VarietyData v = load(o);
        if (format_of(o) == Format::json)
            out << nlohmann::ordered_json{{"type", "validation"}, {"name", v.name}, {"valid", true}}.dump() << '\n';
        else
            out << "valid: " << v.name << " (dimension " << v.dim << ", Betti " << join(betti_numbers(v)) << ")\n";
        return kExitOk;
    } catch (const InputError& e) {
        if (e.kind() != InputError::Kind::validation)
            throw;
        if (format_of(o) == Format::json)
            out << nlohmann::ordered_json{{"type", "validation"}, {"valid", false}, {"message", e.what()}}.dump()
                << '\n';
        else
            out << e.what() << '\n';
        return kExitInputError;
    }
}

int cmd_cdga(const Options& o, std::ostream& out)
{
    const VarietyData v = load(o);
    CDGAPresentation cdga = build_section_cdga(v);
    if (v.name == "torus")
        cdga = rename_generators(cdga, torus_display_names());
    const auto& gens = cdga.algebra->generators();
    if (format_of(o) == Format::json) {
        out << nlohmann::ordered_json{{"type", "cdga"},
                                      {"variety", v.name},
                                      {"alpha", to_string(v.alpha)},
                                      {"generators", gens.size()}}
                   .dump()
            << '\n';
        for (const auto& g : gens)
            out << nlohmann::ordered_json{{"type", "generator"},
                                          {"name", g.name},
                                          {"degree", g.degree},
                                          {"differential", to_string(cdga.differential[g.id])}}
                       .dump()
                << '\n';
        return kExitOk;
    }
    out << "CDGA model for " << v.name << ", alpha = " << to_string(v.alpha) << '\n';
    std::vector<std::string> listed;
    for (const auto& g : gens)
        listed.push_back(g.name + " (" + std::to_string(g.degree) + ")");
    out << "generators: " << join(listed, ", ") << '\n';
    for (const auto& g : gens)
        out << "d(" << g.name << ") = " << to_string(cdga.differential[g.id]) << '\n';
    return kExitOk;
}

int cmd_betti(const Options& o, std::ostream& out)
{
    const VarietyData v = load(o);
    const int top = o.max_degree >= 0 ? o.max_degree : 6;
    const BettiTable t = betti_table(build_section_cdga(v), top, cohomology_options());
    if (format_of(o) == Format::json)
        out << to_json(t).dump() << '\n';
    else
        out << "Betti numbers of the section-space model, degrees 0.." << top << ":\n" << join(t.betti) << '\n';
    return kExitOk;
}

RangeReport range_from_flags(const Options& o)
{
    if (o.curve_genus || o.degree) {
        if (!o.curve_genus || !o.degree)
            throw InputError(InputError::Kind::schema, "--curve-genus and --degree go together");
        const int g = *o.curve_genus, deg = *o.degree;
        if (g < 0)
            throw InputError(InputError::Kind::schema, "--curve-genus must be non-negative");
        std::vector<std::string> assumptions;
        if (deg > 0 && deg > 2 * g - 2)
            assumptions.push_back("alpha and alpha - c1(K_X) ample (degrees " + std::to_string(deg) + " and " +
                                  std::to_string(deg - 2 * g + 2) + " are positive)");
        else
            assumptions.push_back("alpha or alpha - c1(K_X) is not ample; range not applicable");
        return make_range_report(d_curve(g, deg), BoundSource::curve_RR, true, std::move(assumptions));
    }
    if (!o.toric.empty())
        return make_range_report(d_toric(o.toric), BoundSource::toric, true,
                                 {"smooth projective toric variety; intersection numbers with the invariant curves "
                                  "as given"});
    if (o.jet_bound) {
        if (*o.jet_bound < -1)
            throw InputError(InputError::Kind::schema, "--jet-bound must be at least -1");
        if (o.power)
            return make_range_report(d_power(std::max(*o.jet_bound, 0), *o.power), BoundSource::tensor_additivity,
                                     false,
                                     {"line bundle is the " + std::to_string(*o.power) + "-th power of a " +
                                      std::to_string(*o.jet_bound) + "-jet ample bundle (user asserted)"});
        return make_range_report(*o.jet_bound, BoundSource::user_supplied, false,
                                 {"jet-ampleness bound supplied by the user"});
    }
    throw InputError(InputError::Kind::schema,
                     "range needs --curve-genus/--degree, --toric, --jet-bound, or a variety with an automatic bound");
}

RangeReport range_for_variety(const Options& o, const VarietyData& v)
{
    if (o.jet_bound) {
        RangeReport r = range_from_flags(o);
        r.assumptions.push_back(v.ampleness_asserted ? "alpha and alpha - c1(K_X) ample"
                                                     : "ampleness of alpha and alpha - c1(K_X) NOT established");
        return r;
    }
    if (auto r = automatic_range(v))
        return *r;
    throw InputError(InputError::Kind::schema,
                     "no jet-ampleness bound can be read off '" + v.name + "'; pass --jet-bound");
}

int cmd_range(const Options& o, std::ostream& out)
{
    const bool has_variety = !o.input.empty() || !o.builtin_name.empty();
    print_range(out, format_of(o), has_variety ? range_for_variety(o, load(o)) : range_from_flags(o));
    return kExitOk;
}

int cmd_stable_series(const Options& o, std::ostream& out)
{
    const VarietyData v = load(o);
    const int top = o.max_degree >= 0 ? o.max_degree : 10;
    const PoincareSeries stable = stable_moduli_series(v, top);
    const PoincareSeries grw = grw_series(v, top);
    if (format_of(o) == Format::json) {
        auto js = to_json(stable);
        js["series"] = "stable";
        auto jg = to_json(grw);
        jg["series"] = "grw";
        out << js.dump() << '\n' << jg.dump() << '\n';
        return kExitOk;
    }
    out << "stable series, degrees 0.." << top << ": " << join(stable.coefficients) << '\n';
    out << "grw series, degrees 0.." << top << ":    " << join(grw.coefficients) << '\n';
    return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out)
{
    const VarietyData v = load(o);
    const RangeReport range = range_for_variety(o, v);
    const ComparisonReport r = compare_stable(v, range.jet_bound, o.max_degree, cohomology_options());
    if (format_of(o) == Format::json) {
        for (const auto& row : r.rows)
            out << nlohmann::ordered_json{{"type", "comparison_row"},
                                          {"degree", row.degree},
                                          {"betti", row.betti},
                                          {"stable", row.stable},
                                          {"equal", row.equal},
                                          {"certified", row.certified}}
                       .dump()
                << '\n';
        out << nlohmann::ordered_json{{"type", "comparison"},
                                      {"variety", v.name},
                                      {"jet_bound", r.jet_bound},
                                      {"certified_range", r.certified_range},
                                      {"all_equal", r.all_equal},
                                      {"assumptions", range.assumptions}}
                   .dump()
            << '\n';
        return kExitOk;
    }
    out << "comparison for " << v.name << ", alpha = " << to_string(v.alpha) << ", d " << (range.exact ? "= " : ">= ")
        << r.jet_bound << " (" << to_string(range.source) << "), certified through degree " << r.certified_range
        << '\n';
    out << "degree  betti  stable  equal  certified\n";
    for (const auto& row : r.rows) {
        char line[96];
        std::snprintf(line, sizeof line, "%6d  %5zu  %6llu  %5s  %s\n", row.degree, row.betti,
                      static_cast<unsigned long long>(row.stable), row.equal ? "yes" : "no",
                      row.certified ? "yes" : "uncertified");
        out << line;
    }
    if (r.certified_range < 0)
        out << "verdict: empty certified range\n";
    else
        out << "verdict: " << (r.all_equal ? "all equal" : "MISMATCH") << " in the certified range\n";
    for (const auto& a : range.assumptions)
        out << "assumption: " << a << '\n';
    return kExitOk;
}

int cmd_hilbert(const Options& o, std::ostream& out)
{
    const VarietyData v = load(o);
    const Element c1L = parse_element(v.ring, o.bundle);
    if (!c1L.is_zero() && c1L.degree() != 2)
        throw InputError(InputError::Kind::syntax, "--bundle must be a class of degree 2");
    const UnivariatePolynomial p = hilbert_polynomial(v, c1L);
    std::vector<std::string> coeffs;
    for (const auto& c : p.coefficients())
        coeffs.push_back(format_rational(c));
    if (format_of(o) == Format::json) {
        out << nlohmann::ordered_json{{"type", "hilbert_polynomial"},
                                      {"variety", v.name},
                                      {"coefficients", coeffs},
                                      {"integer_valued", p.is_integer_valued()}}
                   .dump()
            << '\n';
        return kExitOk;
    }
    out << "P(m) = " << polynomial_string(p) << '\n';
    out << "coefficients (ascending in m): " << (coeffs.empty() ? "0" : join(coeffs)) << '\n';
    out << "integer-valued: " << (p.is_integer_valued() ? "yes" : "no") << '\n';
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Rational cohomology of section spaces of projectivised jet bundles"};
    app.name("hypermod");
    app.require_subcommand(1);
    Options o;

    auto add_variety = [&](CLI::App* sub) {
        sub->add_option("input", o.input, "variety description file (JSON)");
        sub->add_option("--builtin", o.builtin_name, "torus, pN, curveG, abelianG or product:A,B");
        sub->add_option("--alpha", o.alpha, "divisor class, e.g. 3u or 2h_1+3h_2");
        sub->add_flag("--assert-ample", o.assert_ample, "assert that alpha and alpha - c1(K_X) are ample");
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"human", "json"}));
    };
    auto* validate_cmd = app.add_subcommand("validate", "check a variety description");
    add_variety(validate_cmd);
    auto* cdga_cmd = app.add_subcommand("cdga", "print the CDGA model of the section space");
    add_variety(cdga_cmd);
    auto* betti_cmd = app.add_subcommand("betti", "Betti numbers of the CDGA model");
    add_variety(betti_cmd);
    betti_cmd->add_option("--max-degree", o.max_degree, "largest degree (default 6)")->check(CLI::NonNegativeNumber);
    auto* range_cmd = app.add_subcommand("range", "jet-ampleness bound and certified degree range");
    add_variety(range_cmd);
    range_cmd->add_option("--curve-genus", o.curve_genus, "genus of a curve");
    range_cmd->add_option("--degree", o.degree, "degree of the line bundle on the curve");
    range_cmd->add_option("--toric", o.toric, "intersection numbers with the torus-invariant curves")->delimiter(',');
    range_cmd->add_option("--jet-bound", o.jet_bound, "known jet-ampleness bound");
    range_cmd->add_option("--power", o.power, "tensor power of the --jet-bound bundle")->check(CLI::PositiveNumber);
    auto* series_cmd = app.add_subcommand("stable-series", "Poincare series of the stable cohomology rings");
    add_variety(series_cmd);
    series_cmd->add_option("--max-degree", o.max_degree, "largest degree (default 10)")->check(CLI::NonNegativeNumber);
    auto* compare_cmd = app.add_subcommand("compare", "compare Betti numbers with the stable series");
    add_variety(compare_cmd);
    compare_cmd->add_option("--jet-bound", o.jet_bound, "jet-ampleness bound (default: read off the variety)");
    compare_cmd->add_option("--power", o.power, "tensor power of the --jet-bound bundle")->check(CLI::PositiveNumber);
    compare_cmd->add_option("--max-degree", o.max_degree, "also list degrees up to this one, uncertified")
        ->check(CLI::NonNegativeNumber);
    auto* hilbert_cmd = app.add_subcommand("hilbert", "Hilbert polynomial by Hirzebruch-Riemann-Roch");
    add_variety(hilbert_cmd);
    hilbert_cmd->add_option("--bundle", o.bundle, "first Chern class of the line bundle (default 0)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (validate_cmd->parsed())
            return cmd_validate(o, out);
        if (cdga_cmd->parsed())
            return cmd_cdga(o, out);
        if (betti_cmd->parsed())
            return cmd_betti(o, out);
        if (range_cmd->parsed())
            return cmd_range(o, out);
        if (series_cmd->parsed())
            return cmd_stable_series(o, out);
        if (compare_cmd->parsed())
            return cmd_compare(o, out);
        if (hilbert_cmd->parsed())
            return cmd_hilbert(o, out);
    } catch (const ResourceLimitError& e) {
        err << "resource limit: " << e.what() << '\n';
        return kExitResourceLimit;
    } catch (const std::overflow_error& e) {
        err << "resource limit: " << e.what() << '\n';
        return kExitResourceLimit;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace hypermod
