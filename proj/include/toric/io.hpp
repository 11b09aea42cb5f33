/**
 * JSON file formats, divisor parsing and the inequality-region table.
 *
 * Fan:        {"dim": n, "rays": [[..],..], "max_cones": [[0,1,..],..], "pic_basis": [..]}
 *             (ray indices 0-based; "pic_basis" optional)
 * Divisor:    {"coeffs": [..]}  or a bare array
 * Quiver:     {"vertices": [{"id": "a", "weight": -2}, ..],
 *              "arrows": [{"id": "1", "tail": "d", "head": "b", "ray": 0}, ..],
 *              "base": "e"}
 * Collection: {"classes": [{"coeffs": [..], "provenance": ".."}, ..]}
 * Regions:    {"coordinates": [0,1,5,6], "regions": [{"index": 1, "degree": 0,
 *              "inequalities": [{"coeffs": [1,1,0,0], "op": ">=", "rhs": 0}, ..]}, ..]}
 */

#ifndef TORIC_IO_HPP
#define TORIC_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "toric/collections.hpp"
#include "toric/fan.hpp"
#include "toric/weights.hpp"

namespace toric {

/// Malformed input: bad JSON, missing fields, wrong shapes.
class InputError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

nlohmann::json read_json_file(const std::string& path);
nlohmann::json parse_json(std::istream& in, const std::string& what);

Fan fan_from_json(const nlohmann::json& j);
nlohmann::json fan_to_json(const Fan& fan);
Fan load_fan(const std::string& path);

TorusDivisor divisor_from_json(const nlohmann::json& j);
/// Accepts "0,0,2", "(-1,1,0)", "d=(0,0,2)" and "[1, 2]".
TorusDivisor parse_divisor(const std::string& text);

Quiver quiver_from_json(const nlohmann::json& j, std::size_t num_rays);
nlohmann::json quiver_to_json(const Quiver& q);

nlohmann::json collection_to_json(const PicardGroup& pic, std::span<const BundleClass> bundles);
/// Each entry's divisor is classified again, so any representative works.
std::vector<BundleClass> collection_from_json(const nlohmann::json& j, const PicardGroup& pic);

nlohmann::json table_to_json(const CohomologyTable& t);
CohomologyTable table_from_json(const nlohmann::json& j);

struct Inequality
{
    std::vector<long long> coeffs;
    /// ">=" or "<="
    std::string op;
    long long rhs = 0;

    bool holds(std::span<const long long> x) const;
};

struct Region
{
    int index = 0;
    std::size_t degree = 0;
    std::vector<Inequality> inequalities;

    bool contains(std::span<const long long> x) const;
};

struct RegionTable
{
    /// Ray indices giving the coordinates the inequalities are written in.
    std::vector<std::size_t> coordinates;
    std::vector<Region> regions;

    /// Whether some region of the given degree contains x.
    bool predicts(std::size_t degree, std::span<const long long> x) const;
};

RegionTable region_table_from_json(const nlohmann::json& j);

} // namespace toric

#endif
