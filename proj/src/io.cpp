#include "hypermod/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace hypermod {

using nlohmann::json;
using nlohmann::ordered_json;

InputError::InputError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what)
{
    throw InputError(InputError::Kind::schema, "schema error at " + path + ": " + what);
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

const json& field(const json& obj, const std::string& path, const char* key)
{
    auto it = obj.find(key);
    if (it == obj.end())
        schema_error(path, std::string("missing field '") + key + "'");
    return *it;
}

std::string string_at(const json& j, const std::string& path)
{
    if (!j.is_string())
        schema_error(path, "expected a string");
    return j.get<std::string>();
}

int int_at(const json& j, const std::string& path)
{
    if (!j.is_number_integer())
        schema_error(path, "expected an integer");
    return j.get<int>();
}

const json& array_at(const json& j, const std::string& path)
{
    if (!j.is_array())
        schema_error(path, "expected an array");
    return j;
}

Rational coefficient_at(const json& j, const std::string& path)
{
    const std::string text = string_at(j, path);
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument& e) {
        throw InputError(InputError::Kind::syntax, "syntax error at " + path + ": " + e.what());
    }
}

RingPresentation::SparseVector sparse_at(const json& j, const std::string& path,
                                          const std::map<std::string, std::size_t>& labels)
{
    std::map<std::size_t, Rational> acc;
    const json& arr = array_at(j, path);
    for (std::size_t t = 0; t < arr.size(); ++t) {
        const std::string tp = path + "/" + std::to_string(t);
        if (!arr[t].is_object())
            schema_error(tp, "expected an object {basis, coeff}");
        const std::string label = string_at(field(arr[t], tp, "basis"), tp + "/basis");
        auto it = labels.find(label);
        if (it == labels.end())
            schema_error(tp + "/basis", "unknown basis label '" + label + "'");
        acc[it->second] += coefficient_at(field(arr[t], tp, "coeff"), tp + "/coeff");
    }
    RingPresentation::SparseVector out;
    for (auto& [i, c] : acc)
        if (c != 0)
            out.emplace_back(i, c);
    return out;
}

Element element_at(const json& j, const std::string& path, const std::shared_ptr<const RingPresentation>& ring,
                   const std::map<std::string, std::size_t>& labels)
{
    std::vector<std::pair<std::string, Rational>> terms;
    for (const auto& [i, c] : sparse_at(j, path, labels))
        terms.emplace_back(ring->entry(i).label, c);
    return ring_element(ring, terms);
}

ordered_json element_to_json(const Element& e)
{
    ordered_json arr = ordered_json::array();
    const auto* ring = dynamic_cast<const RingPresentation*>(e.algebra_ptr().get());
    if (!ring && !e.is_zero())
        throw std::invalid_argument("variety_to_json: element outside the cohomology ring");
    for (const auto& [k, c] : e.terms())
        arr.push_back({{"basis", ring->entry(RingPresentation::index_of(k)).label}, {"coeff", format_rational(c)}});
    return arr;
}

bool is_label_char(char c)
{
    return !std::isspace(static_cast<unsigned char>(c)) && c != '+' && c != '-';
}

}  // namespace

VarietyData parse_variety(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw InputError(InputError::Kind::syntax, "syntax error at line " + std::to_string(line) + ", column " +
                                                       std::to_string(col) + ": " + e.what());
    }
    if (!doc.is_object())
        schema_error("/", "expected an object");

    VarietyData v;
    v.name = string_at(field(doc, "/", "name"), "/name");
    v.dim = int_at(field(doc, "/", "dim"), "/dim");
    if (v.dim < 1)
        schema_error("/dim", "must be at least 1");

    std::vector<BasisEntry> basis;
    std::map<std::string, std::size_t> labels;
    const json& jb = array_at(field(doc, "/", "basis"), "/basis");
    for (std::size_t i = 0; i < jb.size(); ++i) {
        const std::string p = "/basis/" + std::to_string(i);
        if (!jb[i].is_object())
            schema_error(p, "expected an object {label, degree}");
        BasisEntry entry{string_at(field(jb[i], p, "label"), p + "/label"), int_at(field(jb[i], p, "degree"), p + "/degree")};
        if (entry.degree < 0 || entry.degree > 2 * v.dim)
            schema_error(p + "/degree", "must lie in 0.." + std::to_string(2 * v.dim));
        if (!labels.emplace(entry.label, i).second)
            schema_error(p + "/label", "duplicate label '" + entry.label + "'");
        basis.push_back(std::move(entry));
    }

    std::vector<std::vector<std::optional<RingPresentation::SparseVector>>> table(
        basis.size(), std::vector<std::optional<RingPresentation::SparseVector>>(basis.size()));
    const json& jp = array_at(field(doc, "/", "products"), "/products");
    for (std::size_t t = 0; t < jp.size(); ++t) {
        const std::string p = "/products/" + std::to_string(t);
        if (!jp[t].is_object())
            schema_error(p, "expected an object {left, right, result}");
        auto lookup = [&](const char* key) {
            const std::string label = string_at(field(jp[t], p, key), p + "/" + key);
            auto it = labels.find(label);
            if (it == labels.end())
                schema_error(p + "/" + key, "unknown basis label '" + label + "'");
            return it->second;
        };
        const std::size_t l = lookup("left"), r = lookup("right");
        if (table[l][r])
            schema_error(p, "product " + basis[l].label + " * " + basis[r].label + " given twice");
        table[l][r] = sparse_at(field(jp[t], p, "result"), p + "/result", labels);
    }

    const std::string point = string_at(field(doc, "/", "point_class"), "/point_class");
    if (!labels.contains(point))
        schema_error("/point_class", "unknown basis label '" + point + "'");
    auto ring = std::make_shared<const RingPresentation>(std::move(basis), std::move(table), 2 * v.dim, point);
    v.ring = ring;

    const json& jh = array_at(field(doc, "/", "h1_basis"), "/h1_basis");
    for (std::size_t i = 0; i < jh.size(); ++i)
        v.h1_basis.push_back(string_at(jh[i], "/h1_basis/" + std::to_string(i)));

    const json& jc = array_at(field(doc, "/", "tangent_chern"), "/tangent_chern");
    for (std::size_t i = 0; i < jc.size(); ++i)
        v.tangent_chern.push_back(element_at(jc[i], "/tangent_chern/" + std::to_string(i), ring, labels));

    v.alpha = element_at(field(doc, "/", "alpha"), "/alpha", ring, labels);
    if (auto it = doc.find("polarization"); it != doc.end() && !it->is_null())
        v.polarization = element_at(*it, "/polarization", ring, labels);
    if (auto it = doc.find("ample_asserted"); it != doc.end()) {
        if (!it->is_boolean())
            schema_error("/ample_asserted", "expected a boolean");
        v.ampleness_asserted = it->get<bool>();
    }
    if (auto it = doc.find("toric_curves"); it != doc.end()) {
        const json& jt = array_at(*it, "/toric_curves");
        for (std::size_t i = 0; i < jt.size(); ++i)
            v.toric_curves.push_back(element_at(jt[i], "/toric_curves/" + std::to_string(i), ring, labels));
    }

    if (auto violations = validate(v); !violations.empty()) {
        std::string msg = "validation failed for '" + v.name + "':";
        for (const auto& line : violations)
            msg += "\n  " + line;
        throw InputError(InputError::Kind::validation, msg);
    }
    return v;
}

VarietyData parse_variety_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError(InputError::Kind::schema, "cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_variety(ss.str());
}

ordered_json variety_to_json(const VarietyData& v)
{
    const auto& ring = *v.ring;
    ordered_json j;
    j["name"] = v.name;
    j["dim"] = v.dim;
    j["basis"] = ordered_json::array();
    for (const auto& b : ring.basis())
        j["basis"].push_back({{"label", b.label}, {"degree", b.degree}});
    j["products"] = ordered_json::array();
    for (std::size_t l = 0; l < ring.size(); ++l)
        for (std::size_t r = 0; r < ring.size(); ++r) {
            auto cell = ring.product(l, r);
            if (!cell)
                continue;
            ordered_json res = ordered_json::array();
            for (const auto& [i, c] : *cell)
                res.push_back({{"basis", ring.entry(i).label}, {"coeff", format_rational(c)}});
            j["products"].push_back({{"left", ring.entry(l).label}, {"right", ring.entry(r).label}, {"result", res}});
        }
    if (ring.point_class())
        j["point_class"] = *ring.point_class();
    j["h1_basis"] = v.h1_basis;
    j["tangent_chern"] = ordered_json::array();
    for (const auto& c : v.tangent_chern)
        j["tangent_chern"].push_back(element_to_json(c));
    j["alpha"] = element_to_json(v.alpha);
    if (v.polarization)
        j["polarization"] = element_to_json(*v.polarization);
    j["ample_asserted"] = v.ampleness_asserted;
    if (!v.toric_curves.empty()) {
        j["toric_curves"] = ordered_json::array();
        for (const auto& c : v.toric_curves)
            j["toric_curves"].push_back(element_to_json(c));
    }
    return j;
}

Element parse_element(const std::shared_ptr<const RingPresentation>& ring, std::string_view text)
{
    auto fail = [&](std::size_t pos, const std::string& what) -> InputError {
        return InputError(InputError::Kind::syntax, "syntax error in '" + std::string(text) + "' at offset " +
                                                        std::to_string(pos) + ": " + what);
    };
    std::vector<std::string> labels;
    for (const auto& b : ring->basis())
        labels.push_back(b.label);
    std::sort(labels.begin(), labels.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });

    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    };
    Element result = Element::zero(ring);
    bool first = true;
    skip_ws();
    if (pos == text.size())
        throw fail(pos, "empty expression");
    while (pos < text.size()) {
        int sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
            skip_ws();
        } else if (!first) {
            throw fail(pos, "expected '+' or '-'");
        }
        first = false;

        Rational coeff = 1;
        bool have_coeff = false;
        const std::size_t start = pos;
        while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
            ++pos;
        if (pos > start) {
            try {
                coeff = parse_rational(text.substr(start, pos - start));
            } catch (const std::invalid_argument& e) {
                throw fail(start, e.what());
            }
            have_coeff = true;
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                skip_ws();
            }
        }

        std::string label;
        if (pos < text.size() && is_label_char(text[pos])) {
            for (const auto& l : labels)
                if (text.substr(pos, l.size()) == l) {
                    label = l;
                    break;
                }
            if (label.empty())
                throw fail(pos, "unknown basis label");
            pos += label.size();
            if (pos < text.size() && is_label_char(text[pos]))
                throw fail(pos, "unexpected character after label '" + label + "'");
        } else if (!have_coeff) {
            throw fail(pos, "expected a coefficient or a basis label");
        } else {
            label = "1";
            if (!ring->index(label))
                throw fail(pos, "ring has no unit class '1'");
        }
        result = result + ring_element(ring, label, coeff * sign);
        skip_ws();
    }
    return result;
}

Element parse_divisor_class(const std::shared_ptr<const RingPresentation>& ring, std::string_view text)
{
    Element e = parse_element(ring, text);
    if (!e.is_zero() && e.degree() != 2)
        throw InputError(InputError::Kind::syntax, "'" + std::string(text) + "' is not a class of degree 2");
    return e;
}

ordered_json to_json(const BettiTable& t)
{
    return {{"type", "betti_table"}, {"max_degree", t.max_degree}, {"betti", t.betti}};
}

ordered_json to_json(const RangeReport& r)
{
    return {{"type", "range_report"},
            {"jet_bound", r.jet_bound},
            {"source", std::string(to_string(r.source))},
            {"exact", r.exact},
            {"max_valid_degree", r.max_valid_degree},
            {"assumptions", r.assumptions}};
}

ordered_json to_json(const PoincareSeries& s)
{
    return {{"type", "poincare_series"}, {"max_degree", s.max_degree}, {"coefficients", s.coefficients}};
}

namespace {

void expect_type(const json& j, const char* type)
{
    if (!j.is_object() || j.value("type", "") != type)
        schema_error("/type", std::string("expected a '") + type + "' record");
}

}  // namespace

BettiTable betti_table_from_json(const json& j)
{
    expect_type(j, "betti_table");
    BettiTable t;
    t.max_degree = int_at(field(j, "/", "max_degree"), "/max_degree");
    t.betti = field(j, "/", "betti").get<std::vector<std::size_t>>();
    if (t.betti.size() != static_cast<std::size_t>(t.max_degree) + 1)
        schema_error("/betti", "length differs from max_degree + 1");
    return t;
}

RangeReport range_report_from_json(const json& j)
{
    expect_type(j, "range_report");
    RangeReport r;
    r.jet_bound = int_at(field(j, "/", "jet_bound"), "/jet_bound");
    try {
        r.source = parse_bound_source(string_at(field(j, "/", "source"), "/source"));
    } catch (const std::invalid_argument& e) {
        schema_error("/source", e.what());
    }
    r.exact = field(j, "/", "exact").get<bool>();
    r.max_valid_degree = int_at(field(j, "/", "max_valid_degree"), "/max_valid_degree");
    r.assumptions = field(j, "/", "assumptions").get<std::vector<std::string>>();
    return r;
}

PoincareSeries poincare_series_from_json(const json& j)
{
    expect_type(j, "poincare_series");
    PoincareSeries s;
    s.max_degree = int_at(field(j, "/", "max_degree"), "/max_degree");
    s.coefficients = field(j, "/", "coefficients").get<std::vector<std::uint64_t>>();
    if (s.coefficients.size() != static_cast<std::size_t>(s.max_degree) + 1)
        schema_error("/coefficients", "length differs from max_degree + 1");
    return s;
}

}  // namespace hypermod
