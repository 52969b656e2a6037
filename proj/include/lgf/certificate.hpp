#ifndef LGF_CERTIFICATE_HPP
#define LGF_CERTIFICATE_HPP

#include "lgf/descent.hpp"
#include "lgf/function_field.hpp"
#include "lgf/squareclasses.hpp"

#include <json.hpp>

namespace lgf {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A point y_i of the top tower level with the value the final cover takes there.
struct DesignatedPoint {
    TowerPoint point;
    std::string role; // "zero", "a", "b", "ab" or "c"
    Rational value;
    bool operator==(const DesignatedPoint &) const = default;
};

// A recorded check; the verifier recomputes `value` from the other fields.
struct AuditEntry {
    std::string check;
    std::string subject;
    std::string value;
    bool operator==(const AuditEntry &) const = default;
};

struct ConstructionCertificate {
    long n = 0;
    Tower tower;
    MordellWeilCertificate mw;
    SquareClassData square_data;
    std::vector<DesignatedPoint> designated;
    std::vector<AuditEntry> audit;
};

// ---- encoding ----

namespace codec {

inline Json poly(const Poly &p)
{
    Json a = Json::array();
    for (const auto &c : p.coeffs())
        a.push_back(to_string(c));
    return a;
}

inline Json function(const FunctionElement &F)
{
    const std::size_t L = F.level();
    if (L == 0) {
        const BaseFunction &b = F.comps[0];
        return Json{{"level", 0}, {"p", poly(b.p())}, {"q", poly(b.q())}, {"d", poly(b.d())}};
    }
    auto [g, h] = F.split();
    return Json{{"level", L}, {"g", function(g)}, {"h", function(h)}};
}

inline Json curve_point(const CurvePoint &P)
{
    if (P.is_infinity())
        return "inf";
    return Json::array({to_string(P.x()), to_string(P.y())});
}

inline Json tower_point(const TowerPoint &P)
{
    Json u = Json::array();
    for (const auto &c : P.coords)
        u.push_back(to_string(c));
    return Json{{"base", curve_point(P.base)}, {"u", u}};
}

inline Json quadratic_point(const QuadraticPoint &P)
{
    return Json{{"x0", to_string(P.x0)}, {"fiber", to_string(P.fiber)}};
}

inline Json place_set(const PlaceSet &S)
{
    Json a = Json::array();
    for (const auto &v : S)
        a.push_back(to_string(v));
    return a;
}

inline std::string role_name(CoverRole r) { return r == CoverRole::doubling ? "doubling" : "final"; }

// ---- decoding ----

inline const Json &field(const Json &j, const char *key)
{
    if (!j.is_object() || !j.contains(key))
        throw FormatError(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline Rational rational(const Json &j)
{
    if (!j.is_string())
        throw FormatError("rational must be a string, got " + j.dump());
    try {
        return parse_rational(j.get<std::string>());
    } catch (const ArithmeticError &e) {
        throw FormatError(e.what());
    }
}

inline long integer(const Json &j)
{
    if (!j.is_number_integer())
        throw FormatError("expected an integer, got " + j.dump());
    return j.get<long>();
}

inline Poly poly_from(const Json &j)
{
    if (!j.is_array())
        throw FormatError("polynomial must be an array of rationals");
    std::vector<Rational> c;
    for (const auto &x : j)
        c.push_back(rational(x));
    return Poly(std::move(c));
}

inline FunctionElement function_from(const Json &j, int depth = 0)
{
    if (depth > 16)
        throw FormatError("function nesting too deep");
    const long L = integer(field(j, "level"));
    if (L < 0)
        throw FormatError("negative function level");
    if (L == 0) {
        Poly d = poly_from(field(j, "d"));
        if (d.is_zero())
            throw FormatError("zero denominator");
        return FunctionElement(BaseFunction(poly_from(field(j, "p")), poly_from(field(j, "q")), d));
    }
    FunctionElement g = function_from(field(j, "g"), depth + 1), h = function_from(field(j, "h"), depth + 1);
    const auto below = static_cast<std::size_t>(L - 1);
    if (g.level() > below || h.level() > below)
        throw FormatError("function component above its level");
    return FunctionElement::join(g.lifted(below), h.lifted(below));
}

inline CurvePoint curve_point_from(const Json &j)
{
    if (j.is_string() && j.get<std::string>() == "inf")
        return CurvePoint::infinity();
    if (!j.is_array() || j.size() != 2)
        throw FormatError("curve point must be \"inf\" or [x, y]");
    return CurvePoint::affine(rational(j[0]), rational(j[1]));
}

inline TowerPoint tower_point_from(const Json &j)
{
    TowerPoint P{curve_point_from(field(j, "base")), {}};
    const Json &u = field(j, "u");
    if (!u.is_array())
        throw FormatError("tower point coordinates must be an array");
    for (const auto &c : u)
        P.coords.push_back(rational(c));
    return P;
}

inline QuadraticPoint quadratic_point_from(const Json &j)
{
    return {rational(field(j, "x0")), rational(field(j, "fiber"))};
}

inline Place place_from(const Json &j)
{
    if (!j.is_string())
        throw FormatError("place must be a string");
    try {
        return parse_place(j.get<std::string>());
    } catch (const ArithmeticError &e) {
        throw FormatError(e.what());
    }
}

} // namespace codec

inline Json to_json(const ConstructionCertificate &c)
{
    using namespace codec;
    Json j;
    j["schema"] = kSchemaVersion;
    j["n"] = c.n;
    const WeierstrassCurve &E = c.tower.curve();
    j["seed"] = Json{{"a", to_string(E.a)}, {"b", to_string(E.b)}};

    Json mw;
    mw["rank_upper_bound"] = c.mw.rank_upper_bound;
    mw["selmer_dimension"] = Json::array({c.mw.selmer_dimension[0], c.mw.selmer_dimension[1]});
    Json tors = Json::array();
    for (const auto &P : c.mw.torsion_points)
        tors.push_back(curve_point(P));
    mw["torsion_points"] = tors;
    Json local = Json::array();
    for (const auto &t : c.mw.selmer_local_data) {
        Json places = Json::object();
        for (const auto &[v, ok] : t.local)
            places[to_string(v)] = ok;
        local.push_back(Json{{"side", t.side}, {"d", to_string(t.d)}, {"places", places}});
    }
    mw["selmer_local_data"] = local;
    j["mw"] = mw;

    Json covers = Json::array();
    for (const auto &cv : c.tower.covers())
        covers.push_back(Json{{"role", role_name(cv.role)},
                              {"f", function(cv.f)},
                              {"P", quadratic_point(cv.P)},
                              {"pole_order", cv.pole_order}});
    j["covers"] = covers;

    Json pts = Json::array();
    for (const auto &d : c.designated)
        pts.push_back(Json{{"point", tower_point(d.point)}, {"role", d.role}, {"value", to_string(d.value)}});
    j["designated_points"] = pts;

    const SquareClassData &s = c.square_data;
    j["square_data"] = Json{{"a", to_string(s.a)},
                            {"b", to_string(s.b)},
                            {"c", to_string(s.c)},
                            {"S", place_set(s.S)},
                            {"w", to_string(s.w)}};

    Json audit = Json::array();
    for (const auto &e : c.audit)
        audit.push_back(Json{{"check", e.check}, {"subject", e.subject}, {"value", e.value}});
    j["audit"] = audit;
    return j;
}

// Structural decoding only; mathematical validity is the verifier's job.
inline ConstructionCertificate certificate_from_json(const Json &j)
{
    using namespace codec;
    if (!j.is_object())
        throw FormatError("certificate must be a JSON object");
    const long schema = integer(field(j, "schema"));
    if (schema != kSchemaVersion)
        throw FormatError("unsupported schema version " + std::to_string(schema) + " (this build reads schema " +
                          std::to_string(kSchemaVersion) + ")");
    ConstructionCertificate c;
    c.n = integer(field(j, "n"));

    const Json &seed = field(j, "seed");
    WeierstrassCurve E;
    try {
        E = WeierstrassCurve(rational(field(seed, "a")), rational(field(seed, "b")));
    } catch (const ArithmeticError &e) {
        throw FormatError(e.what());
    }
    c.tower = Tower(E);

    const Json &mw = field(j, "mw");
    c.mw.curve = E;
    c.mw.rank_upper_bound = integer(field(mw, "rank_upper_bound"));
    const Json &dims = field(mw, "selmer_dimension");
    if (!dims.is_array() || dims.size() != 2)
        throw FormatError("selmer_dimension must be a pair");
    c.mw.selmer_dimension = {static_cast<int>(integer(dims[0])), static_cast<int>(integer(dims[1]))};
    for (const auto &P : field(mw, "torsion_points"))
        c.mw.torsion_points.push_back(curve_point_from(P));
    for (const auto &t : field(mw, "selmer_local_data")) {
        TorsorRecord r;
        r.side = static_cast<int>(integer(field(t, "side")));
        r.d = rational(field(t, "d")).get_num();
        const Json &places = field(t, "places");
        if (!places.is_object())
            throw FormatError("torsor places must be an object");
        for (const auto &[k, v] : places.items()) {
            if (!v.is_boolean())
                throw FormatError("torsor solubility must be boolean");
            r.local.emplace_back(place_from(Json(k)), v.get<bool>());
        }
        c.mw.selmer_local_data.push_back(std::move(r));
    }

    const Json &covers = field(j, "covers");
    if (!covers.is_array())
        throw FormatError("covers must be an array");
    for (const auto &cv : covers) {
        Cover k;
        const Json &role = field(cv, "role");
        if (role == "doubling")
            k.role = CoverRole::doubling;
        else if (role == "final")
            k.role = CoverRole::final_cover;
        else
            throw FormatError("unknown cover role " + role.dump());
        k.f = function_from(field(cv, "f"));
        k.P = quadratic_point_from(field(cv, "P"));
        k.pole_order = integer(field(cv, "pole_order"));
        try {
            c.tower.push_cover(std::move(k));
        } catch (const ArithmeticError &e) {
            throw FormatError(e.what());
        }
    }

    for (const auto &d : field(j, "designated_points")) {
        DesignatedPoint p{tower_point_from(field(d, "point")), {}, rational(field(d, "value"))};
        const Json &role = field(d, "role");
        if (!role.is_string())
            throw FormatError("designated point role must be a string");
        p.role = role.get<std::string>();
        c.designated.push_back(std::move(p));
    }

    const Json &s = field(j, "square_data");
    c.square_data.a = rational(field(s, "a"));
    c.square_data.b = rational(field(s, "b"));
    c.square_data.c = rational(field(s, "c"));
    std::vector<Place> S;
    for (const auto &v : field(s, "S"))
        S.push_back(place_from(v));
    c.square_data.S = PlaceSet(std::move(S));
    c.square_data.w = place_from(field(s, "w"));

    for (const auto &e : field(j, "audit")) {
        const Json &ch = field(e, "check"), &su = field(e, "subject"), &va = field(e, "value");
        if (!ch.is_string() || !su.is_string() || !va.is_string())
            throw FormatError("audit fields must be strings");
        c.audit.push_back({ch.get<std::string>(), su.get<std::string>(), va.get<std::string>()});
    }
    return c;
}

inline ConstructionCertificate parse_certificate(const std::string &text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
    try {
        return certificate_from_json(j);
    } catch (const Json::exception &e) {
        throw FormatError(std::string("malformed certificate: ") + e.what());
    }
}

} // namespace lgf

#endif // LGF_CERTIFICATE_HPP
