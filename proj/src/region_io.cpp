#include "opspec/region_io.hpp"

#include <cmath>
#include <fstream>

namespace opspec {

using nlohmann::json;

namespace {

double number_field(const json& j, const char* key, std::int64_t index) {
    if (!j.contains(key) || !j[key].is_number()) {
        throw RegionParseError(index, "primitives[" + std::to_string(index) +
                                          "]: missing or non-numeric field '" + key + "'");
    }
    const double v = j[key].get<double>();
    if (!std::isfinite(v)) {
        throw RegionParseError(index, "primitives[" + std::to_string(index) +
                                          "]: field '" + key + "' is not finite");
    }
    return v;
}

Complex complex_field(const json& j, const char* key, std::int64_t index) {
    if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2 ||
        !j[key][0].is_number() || !j[key][1].is_number()) {
        throw RegionParseError(index, "primitives[" + std::to_string(index) +
                                          "]: field '" + key + "' must be [re, im]");
    }
    const Complex z(j[key][0].get<double>(), j[key][1].get<double>());
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw RegionParseError(index, "primitives[" + std::to_string(index) +
                                          "]: field '" + key + "' is not finite");
    }
    return z;
}

Primitive parse_primitive(const json& j, std::int64_t index) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
        throw RegionParseError(index, "primitives[" + std::to_string(index) +
                                          "]: entry must be an object with a 'type'");
    }
    const std::string type = j["type"].get<std::string>();
    if (type == "point") {
        return PointPrim{complex_field(j, "z", index)};
    }
    if (type == "segment") {
        return SegmentPrim{complex_field(j, "a", index), complex_field(j, "b", index)};
    }
    if (type == "disk") {
        return DiskPrim{complex_field(j, "center", index), number_field(j, "radius", index)};
    }
    if (type == "rect") {
        return RectPrim{complex_field(j, "corner", index), number_field(j, "width", index),
                        number_field(j, "height", index)};
    }
    if (type == "annulus") {
        return AnnulusPrim{complex_field(j, "center", index), number_field(j, "r_inner", index),
                           number_field(j, "r_outer", index)};
    }
    if (type == "half_plane") {
        return HalfPlanePrim{complex_field(j, "normal", index), number_field(j, "offset", index)};
    }
    if (type == "full_plane") {
        return FullPlanePrim{};
    }
    throw RegionParseError(index, "primitives[" + std::to_string(index) +
                                      "]: unknown type '" + type + "'");
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

}  // namespace

RegionSpec parse_region(const json& j) {
    if (!j.is_object() || !j.contains("primitives") || !j["primitives"].is_array()) {
        throw RegionParseError(-1, "region spec must be {\"primitives\": [...]}");
    }
    std::vector<Primitive> primitives;
    const auto& arr = j["primitives"];
    primitives.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        primitives.push_back(parse_primitive(arr[i], static_cast<std::int64_t>(i)));
    }
    try {
        return RegionSpec(std::move(primitives));
    } catch (const std::invalid_argument& e) {
        throw RegionParseError(-1, e.what());
    }
}

RegionSpec parse_region_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw RegionParseError(-1, "cannot open region file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw RegionParseError(-1, "invalid JSON in '" + path + "': " + e.what());
    }
    return parse_region(j);
}

nlohmann::json region_to_json(const RegionSpec& spec) {
    json arr = json::array();
    for (const auto& prim : spec.primitives()) {
        json p;
        p["type"] = primitive_name(prim);
        std::visit(
            [&p](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, PointPrim>) {
                    p["z"] = complex_to_json(v.z);
                } else if constexpr (std::is_same_v<T, SegmentPrim>) {
                    p["a"] = complex_to_json(v.a);
                    p["b"] = complex_to_json(v.b);
                } else if constexpr (std::is_same_v<T, DiskPrim>) {
                    p["center"] = complex_to_json(v.center);
                    p["radius"] = v.radius;
                } else if constexpr (std::is_same_v<T, RectPrim>) {
                    p["corner"] = complex_to_json(v.corner);
                    p["width"] = v.width;
                    p["height"] = v.height;
                } else if constexpr (std::is_same_v<T, AnnulusPrim>) {
                    p["center"] = complex_to_json(v.center);
                    p["r_inner"] = v.r_inner;
                    p["r_outer"] = v.r_outer;
                } else if constexpr (std::is_same_v<T, HalfPlanePrim>) {
                    p["normal"] = complex_to_json(v.normal);
                    p["offset"] = v.offset;
                }
            },
            prim);
        arr.push_back(std::move(p));
    }
    return json{{"primitives", std::move(arr)}};
}

}  // namespace opspec
