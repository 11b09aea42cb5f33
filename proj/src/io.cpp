#include "toric/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace toric {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key, const std::string& what)
{
    if (!j.is_object() || !j.contains(key))
        throw InputError(what + ": missing field \"" + key + "\"");
    return j.at(key);
}

template <typename T>
T as(const json& j, const std::string& what)
{
    try
    {
        return j.get<T>();
    }
    catch (const json::exception& e)
    {
        throw InputError(what + ": " + e.what());
    }
}

std::vector<std::size_t> ray_set_indices(const RaySet& s)
{
    return s.indices();
}

RaySet ray_set_from(const json& j, std::size_t universe, const std::string& what)
{
    auto idx = as<std::vector<std::size_t>>(j, what);
    try
    {
        return RaySet::from_indices(universe, idx);
    }
    catch (const std::out_of_range&)
    {
        throw InputError(what + ": ray index out of range");
    }
}

} // namespace

json parse_json(std::istream& in, const std::string& what)
{
    try
    {
        return json::parse(in);
    }
    catch (const json::parse_error& e)
    {
        throw InputError(what + ": " + e.what());
    }
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    return parse_json(in, path);
}

Fan fan_from_json(const json& j)
{
    const std::string what = "fan";
    auto dim = as<std::size_t>(field(j, "dim", what), what + ".dim");
    auto rays = as<std::vector<LatticeVector>>(field(j, "rays", what), what + ".rays");
    auto cones = as<std::vector<std::vector<std::size_t>>>(field(j, "max_cones", what), what + ".max_cones");
    std::optional<std::vector<std::size_t>> hint;
    if (j.contains("pic_basis"))
        hint = as<std::vector<std::size_t>>(j.at("pic_basis"), what + ".pic_basis");
    try
    {
        return Fan(dim, std::move(rays), std::move(cones), std::move(hint));
    }
    catch (const FanError& e)
    {
        throw InputError(std::string("invalid fan: ") + e.what());
    }
}

json fan_to_json(const Fan& fan)
{
    json j{{"dim", fan.dim()}, {"rays", fan.rays()}, {"max_cones", fan.max_cones()}};
    if (fan.pic_basis_hint())
        j["pic_basis"] = *fan.pic_basis_hint();
    return j;
}

Fan load_fan(const std::string& path)
{
    return fan_from_json(read_json_file(path));
}

TorusDivisor divisor_from_json(const json& j)
{
    if (j.is_array())
        return TorusDivisor{as<std::vector<long long>>(j, "divisor")};
    return TorusDivisor{as<std::vector<long long>>(field(j, "coeffs", "divisor"), "divisor.coeffs")};
}

TorusDivisor parse_divisor(const std::string& text)
{
    std::string s = text;
    if (auto eq = s.find('='); eq != std::string::npos)
        s = s.substr(eq + 1);
    for (char& c : s)
        if (c == '(' || c == ')' || c == '[' || c == ']' || c == ',')
            c = ' ';
    // U+2212 minus sign, as it appears in copied formulas
    for (std::size_t p; (p = s.find("\xE2\x88\x92")) != std::string::npos;)
        s.replace(p, 3, "-");
    std::istringstream in(s);
    std::vector<long long> coeffs;
    std::string tok;
    while (in >> tok)
    {
        std::size_t used = 0;
        long long v = 0;
        try
        {
            v = std::stoll(tok, &used);
        }
        catch (const std::exception&)
        {
            throw InputError("divisor: cannot parse \"" + tok + "\"");
        }
        if (used != tok.size())
            throw InputError("divisor: cannot parse \"" + tok + "\"");
        coeffs.push_back(v);
    }
    if (coeffs.empty())
        throw InputError("divisor: no coefficients in \"" + text + "\"");
    return TorusDivisor{std::move(coeffs)};
}

Quiver quiver_from_json(const json& j, std::size_t num_rays)
{
    const std::string what = "quiver";
    std::vector<QuiverVertex> vertices;
    for (const auto& v : field(j, "vertices", what))
    {
        QuiverVertex qv;
        const json& id = field(v, "id", what + ".vertices");
        qv.id = id.is_string() ? id.get<std::string>() : id.dump();
        if (v.contains("weight") && !v.at("weight").is_null())
            qv.weight = as<long long>(v.at("weight"), what + ".vertices.weight");
        vertices.push_back(std::move(qv));
    }
    auto lookup = [&](const json& id) {
        const std::string name = id.is_string() ? id.get<std::string>() : id.dump();
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i].id == name)
                return i;
        throw InputError(what + ": unknown vertex \"" + name + "\"");
    };
    std::vector<QuiverArrow> arrows;
    for (const auto& a : field(j, "arrows", what))
    {
        QuiverArrow qa;
        const json& id = field(a, "id", what + ".arrows");
        qa.id = id.is_string() ? id.get<std::string>() : id.dump();
        qa.tail = lookup(field(a, "tail", what + ".arrows"));
        qa.head = lookup(field(a, "head", what + ".arrows"));
        qa.ray = as<std::size_t>(field(a, "ray", what + ".arrows"), what + ".arrows.ray");
        arrows.push_back(std::move(qa));
    }
    std::size_t base = 0;
    if (j.contains("base"))
        base = lookup(j.at("base"));
    try
    {
        return Quiver(std::move(vertices), std::move(arrows), num_rays, base);
    }
    catch (const QuiverError& e)
    {
        throw InputError(std::string("invalid quiver: ") + e.what());
    }
}

json quiver_to_json(const Quiver& q)
{
    json vs = json::array();
    for (const auto& v : q.vertices())
    {
        json jv{{"id", v.id}};
        if (v.weight)
            jv["weight"] = *v.weight;
        vs.push_back(jv);
    }
    json as = json::array();
    for (const auto& a : q.arrows())
        as.push_back({{"id", a.id},
                      {"tail", q.vertices()[a.tail].id},
                      {"head", q.vertices()[a.head].id},
                      {"ray", a.ray}});
    return {{"vertices", vs}, {"arrows", as}, {"base", q.vertices()[q.base_vertex()].id}};
}

json collection_to_json(const PicardGroup& pic, std::span<const BundleClass> bundles)
{
    json cls = json::array();
    for (const auto& b : bundles)
        cls.push_back({{"coeffs", b.cls.representative.coeffs},
                       {"pic", pic.basis_coordinates(b.cls)},
                       {"provenance", b.provenance}});
    return {{"pic_basis", pic.basis()}, {"classes", cls}};
}

std::vector<BundleClass> collection_from_json(const json& j, const PicardGroup& pic)
{
    const json& list = j.is_array() ? j : field(j, "classes", "collection");
    std::vector<BundleClass> out;
    for (const auto& c : list)
    {
        TorusDivisor d = divisor_from_json(c);
        if (d.size() != pic.num_rays())
            throw InputError("collection: divisor has " + std::to_string(d.size()) + " coefficients, fan has " +
                             std::to_string(pic.num_rays()) + " rays");
        std::string prov = c.is_object() && c.contains("provenance") ? c.at("provenance").get<std::string>() : "";
        out.push_back({pic.classify(d), prov});
    }
    return out;
}

json table_to_json(const CohomologyTable& t)
{
    json weights = json::array();
    for (const auto& w : t.weights)
        weights.push_back({{"m", w.m}, {"facets", ray_set_indices(w.facets)}, {"h", w.h}});
    json classes = json::array();
    for (const auto& c : t.classes)
        classes.push_back({{"facets", ray_set_indices(c.facets)},
                           {"count", c.count},
                           {"betti", c.betti.values},
                           {"empty", c.betti.empty},
                           {"h", c.h}});
    std::size_t universe = 0;
    if (!t.weights.empty())
        universe = t.weights.front().facets.universe();
    else if (!t.classes.empty())
        universe = t.classes.front().facets.universe();
    return {{"totals", t.totals},
            {"box", {{"lower", t.box.lower}, {"upper", t.box.upper}}},
            {"num_rays", universe},
            {"weights", weights},
            {"classes", classes}};
}

CohomologyTable table_from_json(const json& j)
{
    const std::string what = "cohomology table";
    CohomologyTable t;
    t.totals = as<std::vector<std::uint64_t>>(field(j, "totals", what), what + ".totals");
    const json& box = field(j, "box", what);
    t.box.lower = as<Weight>(field(box, "lower", what + ".box"), what + ".box.lower");
    t.box.upper = as<Weight>(field(box, "upper", what + ".box"), what + ".box.upper");
    const std::size_t universe = j.contains("num_rays") ? as<std::size_t>(j.at("num_rays"), what) : 0;
    if (j.contains("weights"))
        for (const auto& w : j.at("weights"))
            t.weights.push_back({as<Weight>(field(w, "m", what), what + ".m"),
                                 ray_set_from(field(w, "facets", what), universe, what + ".facets"),
                                 as<std::vector<std::size_t>>(field(w, "h", what), what + ".h")});
    if (j.contains("classes"))
        for (const auto& c : j.at("classes"))
        {
            WeightClass wc;
            wc.facets = ray_set_from(field(c, "facets", what), universe, what + ".facets");
            wc.count = as<std::uint64_t>(field(c, "count", what), what + ".count");
            wc.betti.values = as<std::vector<std::size_t>>(field(c, "betti", what), what + ".betti");
            wc.betti.empty = c.value("empty", false);
            wc.h = as<std::vector<std::size_t>>(field(c, "h", what), what + ".h");
            t.classes.push_back(std::move(wc));
        }
    return t;
}

bool Inequality::holds(std::span<const long long> x) const
{
    long long s = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        s += coeffs[i] * x[i];
    return op == ">=" ? s >= rhs : s <= rhs;
}

bool Region::contains(std::span<const long long> x) const
{
    return std::all_of(inequalities.begin(), inequalities.end(), [&](const Inequality& q) { return q.holds(x); });
}

bool RegionTable::predicts(std::size_t degree, std::span<const long long> x) const
{
    return std::any_of(regions.begin(), regions.end(),
                       [&](const Region& r) { return r.degree == degree && r.contains(x); });
}

RegionTable region_table_from_json(const json& j)
{
    const std::string what = "region table";
    RegionTable t;
    t.coordinates = as<std::vector<std::size_t>>(field(j, "coordinates", what), what + ".coordinates");
    for (const auto& r : field(j, "regions", what))
    {
        Region reg;
        reg.index = as<int>(field(r, "index", what), what + ".index");
        reg.degree = as<std::size_t>(field(r, "degree", what), what + ".degree");
        for (const auto& q : field(r, "inequalities", what))
        {
            Inequality ineq;
            ineq.coeffs = as<std::vector<long long>>(field(q, "coeffs", what), what + ".coeffs");
            ineq.op = as<std::string>(field(q, "op", what), what + ".op");
            ineq.rhs = as<long long>(field(q, "rhs", what), what + ".rhs");
            if (ineq.op != ">=" && ineq.op != "<=")
                throw InputError(what + ": operator must be >= or <=");
            if (ineq.coeffs.size() != t.coordinates.size())
                throw InputError(what + ": inequality arity does not match the coordinates");
            reg.inequalities.push_back(std::move(ineq));
        }
        t.regions.push_back(std::move(reg));
    }
    return t;
}

} // namespace toric
