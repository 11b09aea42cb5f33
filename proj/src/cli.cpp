#include "toric/cli.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "toric/collections.hpp"
#include "toric/io.hpp"
#include "toric/picard.hpp"
#include "toric/weights.hpp"

namespace toric {

using nlohmann::json;

namespace {

struct Mismatch : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

enum class Format
{
    text,
    json,
    csv,
};

Format parse_format(const std::string& s)
{
    if (s == "text")
        return Format::text;
    if (s == "json")
        return Format::json;
    if (s == "csv")
        return Format::csv;
    throw InputError("unknown format \"" + s + "\" (text, json or csv)");
}

std::string join(const std::vector<long long>& v, const char* sep = ",")
{
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? sep : "") << v[i];
    return os.str();
}

template <typename T>
std::string join_any(const std::vector<T>& v, const char* sep = " ")
{
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? sep : "") << v[i];
    return os.str();
}

/// "1..10", "3", or "1,2,5".
std::vector<unsigned> parse_denominators(const std::string& s)
{
    std::vector<unsigned> out;
    auto number = [&](const std::string& t) {
        std::size_t used = 0;
        long v = 0;
        try
        {
            v = std::stol(t, &used);
        }
        catch (const std::exception&)
        {
            used = 0;
        }
        if (used != t.size() || t.empty() || v <= 0)
            throw InputError("bad denominator \"" + t + "\"");
        return static_cast<unsigned>(v);
    };
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ','))
    {
        if (auto dots = part.find(".."); dots != std::string::npos)
        {
            unsigned a = number(part.substr(0, dots));
            unsigned b = number(part.substr(dots + 2));
            if (a > b)
                throw InputError("empty denominator range \"" + part + "\"");
            for (unsigned l = a; l <= b; ++l)
                out.push_back(l);
        }
        else
        {
            out.push_back(number(part));
        }
    }
    if (out.empty())
        throw InputError("no denominators given");
    return out;
}

std::pair<long long, long long> parse_range(const std::string& s)
{
    auto dots = s.find("..");
    if (dots == std::string::npos)
        throw InputError("range must look like -5..5");
    try
    {
        return {std::stoll(s.substr(0, dots)), std::stoll(s.substr(dots + 2))};
    }
    catch (const std::exception&)
    {
        throw InputError("range must look like -5..5");
    }
}

std::string pic_label(const PicardGroup& pic, const DivisorClass& c)
{
    const auto coords = pic.basis_coordinates(c);
    std::ostringstream os;
    os << "(" << join(coords) << ")";
    return os.str();
}

std::string basis_label(const PicardGroup& pic)
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < pic.basis().size(); ++i)
        os << (i ? "," : "") << "E" << pic.basis()[i] + 1;
    os << ")";
    return os.str();
}

void print_table(std::ostream& out, const Fan& fan, const TorusDivisor& d, const CohomologyTable& t, Format fmt,
                 bool per_weight)
{
    if (fmt == Format::json)
    {
        json j = table_to_json(t);
        j["divisor"] = d.coeffs;
        if (!per_weight)
            j.erase("weights");
        out << j.dump(2) << "\n";
        return;
    }
    if (fmt == Format::csv)
    {
        if (!per_weight)
        {
            out << "p,h\n";
            for (std::size_t p = 0; p < t.totals.size(); ++p)
                out << p << "," << t.totals[p] << "\n";
            return;
        }
        for (std::size_t k = 0; k < fan.dim(); ++k)
            out << "m" << k + 1 << ",";
        out << "facets";
        for (std::size_t p = 0; p < t.totals.size(); ++p)
            out << ",h" << p;
        out << "\n";
        for (const auto& w : t.weights)
        {
            out << join(w.m) << "," << '"' << w.facets.to_string(1) << '"';
            for (auto x : w.h)
                out << "," << x;
            out << "\n";
        }
        return;
    }
    out << "divisor  (" << join(d.coeffs) << ")\n";
    out << "box      ";
    for (std::size_t k = 0; k < t.box.lower.size(); ++k)
        out << (k ? " x " : "") << "[" << t.box.lower[k] << "," << t.box.upper[k] << "]";
    out << "\n";
    for (std::size_t p = 0; p < t.totals.size(); ++p)
        out << "h^" << p << "      " << t.totals[p] << "\n";
    if (per_weight)
    {
        out << "\nweights with nonzero cohomology:\n";
        for (const auto& w : t.weights)
            out << "  m=(" << join(w.m) << ")  J=" << w.facets.to_string(1) << "  h=(" << join_any(w.h, ",")
                << ")\n";
    }
}

void print_collection(std::ostream& out, const PicardGroup& pic, const std::vector<BundleClass>& classes,
                      Format fmt, const json& extra)
{
    if (fmt == Format::json)
    {
        json j = collection_to_json(pic, classes);
        for (auto it = extra.begin(); it != extra.end(); ++it)
            j[it.key()] = it.value();
        out << j.dump(2) << "\n";
        return;
    }
    if (fmt == Format::csv)
    {
        out << "index,pic,divisor,provenance\n";
        for (std::size_t i = 0; i < classes.size(); ++i)
            out << i << ",\"" << pic_label(pic, classes[i].cls) << "\",\""
                << join(classes[i].cls.representative.coeffs) << "\",\"" << classes[i].provenance << "\"\n";
        return;
    }
    for (auto it = extra.begin(); it != extra.end(); ++it)
        out << it.key() << ": " << it.value().dump() << "\n";
    out << classes.size() << " classes in coordinates " << basis_label(pic) << "\n";
    for (std::size_t i = 0; i < classes.size(); ++i)
        out << "  " << std::setw(3) << i << "  " << std::setw(18) << std::left << pic_label(pic, classes[i].cls)
            << std::right << "  " << classes[i].provenance << "\n";
}

int cmd_info(std::ostream& out, const std::string& fan_path, Format fmt)
{
    Fan fan = load_fan(fan_path);
    FanReport rep = validate(fan);
    PicardGroup pic(fan);
    if (fmt == Format::json)
    {
        json j{{"dim", fan.dim()},
               {"rays", fan.num_rays()},
               {"cones", fan.num_cones()},
               {"complete", rep.complete},
               {"simplicial", rep.simplicial},
               {"smooth", rep.smooth},
               {"pic_rank", pic.free_rank()},
               {"pic_basis", pic.basis()},
               {"notes", rep.notes}};
        json tors = json::array();
        for (const auto& t : pic.torsion())
            tors.push_back(t.str());
        j["pic_torsion"] = tors;
        out << j.dump(2) << "\n";
    }
    else
    {
        out << "dimension   " << fan.dim() << "\n";
        out << "rays        " << fan.num_rays() << "\n";
        out << "max cones   " << fan.num_cones() << "\n";
        out << "complete    " << (rep.complete ? "yes" : "no") << "\n";
        out << "simplicial  " << (rep.simplicial ? "yes" : "no") << "\n";
        out << "smooth      " << (rep.smooth ? "yes" : "no") << "\n";
        out << "Pic rank    " << pic.free_rank() << "\n";
        out << "Pic torsion ";
        if (pic.torsion().empty())
            out << "none";
        for (const auto& t : pic.torsion())
            out << "Z/" << t << " ";
        out << "\n";
        if (!pic.basis().empty())
            out << "Pic basis   " << basis_label(pic) << "\n";
        for (const auto& n : rep.notes)
            out << "note: " << n << "\n";
    }
    return rep.usable() ? exit_ok : exit_input;
}

struct CohomologyArgs
{
    std::string fan;
    std::string divisor;
    bool per_weight = false;
    std::string oracle;
    unsigned threads = 1;
    std::string format = "text";
};

int cmd_cohomology(std::ostream& out, const CohomologyArgs& a)
{
    Fan fan = load_fan(a.fan);
    TorusDivisor d = parse_divisor(a.divisor);
    if (d.size() != fan.num_rays())
        throw InputError("divisor has " + std::to_string(d.size()) + " coefficients, fan has " +
                         std::to_string(fan.num_rays()) + " rays");
    CohomologyEngine engine(fan);
    if (!cartier_data(fan, d))
        throw InputError("divisor " + d.to_string() + " is not Cartier");
    ScanOptions opts;
    opts.threads = a.threads;
    opts.keep_weights = true;
    CohomologyTable t = total_cohomology(engine, d, opts);
    if (!a.oracle.empty())
    {
        ScanOptions o = opts;
        if (a.oracle == "cech")
            o.route = Route::cech;
        else if (a.oracle == "order")
            o.route = Route::order;
        else
            throw InputError("unknown oracle \"" + a.oracle + "\" (cech or order)");
        CohomologyTable check = total_cohomology_in_box(engine, d, t.box, o);
        bool same = check.totals == t.totals && check.weights.size() == t.weights.size();
        for (std::size_t i = 0; same && i < t.weights.size(); ++i)
            same = check.weights[i].m == t.weights[i].m && check.weights[i].h == t.weights[i].h;
        if (!same)
            throw Mismatch("oracle " + a.oracle + " disagrees: totals (" + join_any(check.totals, ",") +
                           ") versus (" + join_any(t.totals, ",") + ")");
    }
    print_table(out, fan, d, t, parse_format(a.format), a.per_weight);
    if (!a.oracle.empty() && parse_format(a.format) == Format::text)
        out << "oracle " << a.oracle << ": agrees\n";
    return exit_ok;
}

int cmd_classify_z(std::ostream& out, const std::string& fan_path, std::size_t max_rays, Format fmt)
{
    Fan fan = load_fan(fan_path);
    const std::size_t r = fan.num_rays();
    if (r > max_rays)
        throw InputError("fan has " + std::to_string(r) + " rays; classify-z is capped at " +
                         std::to_string(max_rays) + " (raise --max-rays)");
    CohomologyEngine engine(fan);
    const std::size_t n = fan.dim();
    json rows = json::array();
    if (fmt == Format::csv)
    {
        out << "J,empty";
        for (std::size_t p = 0; p < n; ++p)
            out << ",b" << p;
        out << "\n";
    }
    else if (fmt == Format::text)
    {
        out << std::left << std::setw(2 * r + 4) << "J" << "reduced Betti b0..b" << n - 1 << "\n";
    }
    // subsets by size, then lexicographically
    for (std::size_t k = 0; k <= r; ++k)
    {
        std::vector<std::size_t> idx(k);
        auto visit = [&](const std::vector<std::size_t>& s) {
            FacetSet j = RaySet::from_indices(r, s);
            const BettiVector& b = engine.nerve_betti(j);
            std::vector<std::size_t> vals(n, 0);
            for (std::size_t p = 0; p < n; ++p)
                vals[p] = b.at(p);
            if (fmt == Format::json)
            {
                std::vector<std::size_t> one_based;
                for (auto i : s)
                    one_based.push_back(i + 1);
                rows.push_back({{"J", one_based}, {"empty", b.empty}, {"betti", vals}});
            }
            else if (fmt == Format::csv)
            {
                out << '"' << j.to_string(1) << "\"," << (b.empty ? 1 : 0);
                for (auto v : vals)
                    out << "," << v;
                out << "\n";
            }
            else
            {
                out << std::left << std::setw(2 * r + 4) << j.to_string(1) << std::right
                    << (b.empty ? "empty" : join_any(vals)) << "\n";
            }
        };
        // lexicographic k-subsets
        if (k == 0)
        {
            visit(idx);
            continue;
        }
        for (std::size_t i = 0; i < k; ++i)
            idx[i] = i;
        for (;;)
        {
            visit(idx);
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == r - k + (i - 1))
                --i;
            if (i == 0)
                break;
            ++idx[i - 1];
            for (std::size_t q = i; q < k; ++q)
                idx[q] = idx[q - 1] + 1;
        }
    }
    if (fmt == Format::json)
        out << json{{"rows", rows}}.dump(2) << "\n";
    return exit_ok;
}

int cmd_bondal(std::ostream& out, const std::string& fan_path, const std::string& dens, Format fmt)
{
    Fan fan = load_fan(fan_path);
    require_usable(fan);
    PicardGroup pic(fan);
    auto denominators = parse_denominators(dens);
    BondalResult res = bondal_classes(fan, pic, denominators);
    print_collection(out, pic, res.classes, fmt, json{{"stabilized", res.stabilized}});
    return exit_ok;
}

int cmd_buchsbaum_rim(std::ostream& out, const std::string& fan_path, const std::string& quiver_path, Format fmt)
{
    Fan fan = load_fan(fan_path);
    require_usable(fan);
    PicardGroup pic(fan);
    Quiver q = quiver_from_json(read_json_file(quiver_path), fan.num_rays());
    BuchsbaumRimResult res = buchsbaum_rim_classes(q, pic);
    print_collection(out, pic, res.classes, fmt,
                     json{{"raw_pairs", res.raw_pairs}, {"universal", q.num_vertices()}});
    return exit_ok;
}

int cmd_check_collection(std::ostream& out, std::istream& in, const std::string& fan_path,
                         const std::string& coll_path, unsigned threads, Format fmt)
{
    Fan fan = load_fan(fan_path);
    CohomologyEngine engine(fan);
    PicardGroup pic(fan);
    json j = coll_path.empty() || coll_path == "-" ? parse_json(in, "collection (stdin)") : read_json_file(coll_path);
    auto bundles = collection_from_json(j, pic);
    auto classes = class_list(bundles);
    ExtTable table = ext_table(engine, pic, classes, threads);
    ExceptionalVerdict v = is_strongly_exceptional(table);

    if (fmt == Format::json)
    {
        json entries = json::array();
        for (std::size_t p = 0; p < table.size(); ++p)
            for (std::size_t q = 0; q < table.size(); ++q)
                entries.push_back({{"p", p}, {"q", q}, {"h", table.at(p, q)}});
        json r{{"size", table.size()}, {"strongly_exceptional", v.ok}, {"ext", entries},
               {"admissible_order", v.has_admissible_order}, {"order", v.order}};
        if (v.witness)
            r["witness"] = {{"p", v.witness->p}, {"q", v.witness->q}, {"degree", v.witness->degree}};
        out << r.dump(2) << "\n";
    }
    else
    {
        const std::size_t k = table.size();
        out << k << " bundles in coordinates " << basis_label(pic) << "\n";
        for (std::size_t i = 0; i < k; ++i)
            out << "  " << std::setw(3) << i << "  " << pic_label(pic, classes[i]) << "\n";
        std::size_t top = fan.dim();
        for (std::size_t deg = 0; deg <= top; ++deg)
        {
            out << "\ndim Ext^" << deg << "(L_p, L_q), row p, column q\n";
            for (std::size_t p = 0; p < k; ++p)
            {
                out << "  ";
                for (std::size_t q = 0; q < k; ++q)
                    out << std::setw(4) << table.at(p, q)[deg];
                out << "\n";
            }
        }
        out << "\nadmissible order: ";
        if (v.has_admissible_order)
            out << join_any(v.order);
        else
            out << "none";
        out << "\n";
        if (v.ok)
            out << "strongly exceptional: yes\n";
        else
            out << "strongly exceptional: no, Ext^" << v.witness->degree << "(L_" << v.witness->p << ", L_"
                << v.witness->q << ") = " << table.at(v.witness->p, v.witness->q)[v.witness->degree]
                << ", difference " << pic_label(pic, pic.subtract(classes[v.witness->q], classes[v.witness->p]))
                << "\n";
    }
    return v.ok ? exit_ok : exit_negative;
}

int cmd_region_scan(std::ostream& out, const std::string& fan_path, const std::string& regions_path,
                    const std::string& range, unsigned threads, bool double_box)
{
    Fan fan = load_fan(fan_path);
    CohomologyEngine engine(fan);
    RegionTable table = region_table_from_json(read_json_file(regions_path));
    for (auto c : table.coordinates)
        if (c >= fan.num_rays())
            throw InputError("region table coordinate out of range");
    auto [lo, hi] = parse_range(range);
    const std::size_t k = table.coordinates.size();
    const std::size_t n = fan.dim();
    const auto start = std::chrono::steady_clock::now();

    std::size_t points = 0, mismatches = 0;
    std::vector<std::size_t> nonzero(n + 1, 0);
    std::vector<long long> x(k, lo);
    ScanOptions opts;
    opts.threads = threads;
    opts.keep_weights = false;
    for (;;)
    {
        TorusDivisor d{std::vector<long long>(fan.num_rays(), 0)};
        for (std::size_t i = 0; i < k; ++i)
            d.coeffs[table.coordinates[i]] = x[i];
        CohomologyTable t = total_cohomology(engine, d, opts);
        if (double_box)
        {
            CohomologyTable t2 = total_cohomology_in_box(engine, d, t.box.doubled(), opts);
            if (t2.totals != t.totals)
                throw Mismatch("doubling the box changed the totals at (" + join(x) + ")");
        }
        ++points;
        for (std::size_t p = 0; p <= n; ++p)
        {
            const bool actual = t.totals[p] != 0;
            nonzero[p] += actual;
            if (actual != table.predicts(p, x))
            {
                ++mismatches;
                out << "mismatch at (" << join(x) << "): h^" << p << " = " << t.totals[p] << " but the table says "
                    << (actual ? "zero" : "nonzero") << "\n";
            }
        }
        std::size_t i = k;
        while (i > 0 && x[i - 1] == hi)
            x[--i] = lo;
        if (i == 0)
            break;
        ++x[i - 1];
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out << "points " << points << ", mismatches " << mismatches << "\n";
    for (std::size_t p = 0; p <= n; ++p)
        out << "h^" << p << " nonzero at " << nonzero[p] << " points\n";
    out << std::fixed << std::setprecision(1) << "elapsed " << secs << " s\n";
    if (mismatches)
        throw Mismatch(std::to_string(mismatches) + " region mismatches");
    return exit_ok;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::istream& in)
{
    CLI::App app{"Cohomology of line bundles on smooth complete toric varieties"};
    app.require_subcommand(1);
    std::string format = "text";
    unsigned threads = 1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    };

    std::string fan_path;
    auto* info = app.add_subcommand("info", "validate a fan and report Pic");
    info->add_option("fan", fan_path, "fan JSON")->required();
    add_common(info);

    CohomologyArgs ca;
    auto* coh = app.add_subcommand("cohomology", "h^p of O(D)");
    coh->add_option("fan", ca.fan, "fan JSON")->required();
    coh->add_option("--divisor,-d", ca.divisor, "coefficients, e.g. 0,0,2 or d=(0,0,2)")->required();
    coh->add_flag("--per-weight", ca.per_weight, "list every weight with nonzero cohomology");
    coh->add_option("--oracle", ca.oracle, "recompute with cech or order and compare")
        ->check(CLI::IsMember({"cech", "order"}));
    coh->add_option("--threads,-j", ca.threads, "worker threads (0 = all)");
    add_common(coh);

    std::size_t max_rays = 16;
    auto* cz = app.add_subcommand("classify-z", "reduced Betti numbers of every facet union");
    cz->add_option("fan", fan_path, "fan JSON")->required();
    cz->add_option("--max-rays", max_rays, "refuse fans with more rays");
    add_common(cz);

    std::string dens = "1..10";
    auto* bo = app.add_subcommand("bondal", "classes of floor divisors over a rational grid");
    bo->add_option("fan", fan_path, "fan JSON")->required();
    bo->add_option("--denominators", dens, "e.g. 1..10 or 2,3,5");
    add_common(bo);

    std::string quiver_path;
    auto* br = app.add_subcommand("buchsbaum-rim", "universal and Buchsbaum-Rim classes of a quiver");
    br->add_option("fan", fan_path, "fan JSON")->required();
    br->add_option("quiver", quiver_path, "quiver JSON")->required();
    add_common(br);

    std::string coll_path;
    auto* cc = app.add_subcommand("check-collection", "Ext table and strong exceptionality");
    cc->add_option("fan", fan_path, "fan JSON")->required();
    cc->add_option("collection", coll_path, "collection JSON (omit or - for stdin)");
    cc->add_option("--threads,-j", threads, "worker threads (0 = all)");
    add_common(cc);

    std::string regions_path, range = "-5..5";
    bool double_box = false;
    auto* rs = app.add_subcommand("region-scan", "compare h^p with an inequality-region table");
    rs->add_option("fan", fan_path, "fan JSON")->required();
    rs->add_option("regions", regions_path, "region table JSON")->required();
    rs->add_option("--range", range, "coordinate range, e.g. -5..5");
    rs->add_option("--threads,-j", threads, "worker threads (0 = all)");
    rs->add_flag("--double-box", double_box, "also rescan every doubled box");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_input;
    }

    try
    {
        const Format fmt = parse_format(format);
        if (*info)
            return cmd_info(out, fan_path, fmt);
        if (*coh)
        {
            ca.format = format;
            return cmd_cohomology(out, ca);
        }
        if (*cz)
            return cmd_classify_z(out, fan_path, max_rays, fmt);
        if (*bo)
            return cmd_bondal(out, fan_path, dens, fmt);
        if (*br)
            return cmd_buchsbaum_rim(out, fan_path, quiver_path, fmt);
        if (*cc)
            return cmd_check_collection(out, in, fan_path, coll_path, threads, fmt);
        if (*rs)
            return cmd_region_scan(out, fan_path, regions_path, range, threads, double_box);
    }
    catch (const Mismatch& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_mismatch;
    }
    catch (const BoxVerificationError& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_mismatch;
    }
    catch (const InputError& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_input;
    }
    catch (const FanError& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_input;
    }
    catch (const QuiverError& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_input;
    }
    catch (const std::invalid_argument& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_input;
    }
    return exit_input;
}

} // namespace toric
