#include "qbound/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace qbound {

using nlohmann::json;

namespace {

constexpr const char* kCategoryFormat = "qbound-category";
constexpr const char* kQSystemFormat = "qbound-qsystem";

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

/// Errors are prefixed with origin and a JSON-pointer-like location.
[[noreturn]] void fail(const std::string& origin, const std::string& where, const std::string& msg)
{
    throw Error(origin + ": " + where + ": " + msg);
}

json parse_json(const std::string& text, const std::string& origin)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(origin, "byte " + std::to_string(e.byte), std::string("malformed JSON: ") + e.what());
    }
}

void check_header(const json& j, const char* format, const std::string& origin)
{
    if (!j.is_object()) fail(origin, "/", "expected a JSON object");
    if (!j.contains("format") || j["format"] != format)
        fail(origin, "/format", std::string("expected \"") + format + "\"");
    if (!j.contains("version") || j["version"] != 1) fail(origin, "/version", "unsupported version (expected 1)");
}

cplx parse_complex(const json& v, const std::string& origin, const std::string& where)
{
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        fail(origin, where, "expected a complex number [re, im]");
    return {v[0].get<double>(), v[1].get<double>()};
}

struct LabelTable {
    std::map<std::string, int> byName;
    int rank = 0;

    int get(const json& v, const std::string& origin, const std::string& where) const
    {
        if (v.is_number_integer()) {
            const int k = v.get<int>();
            if (k < 0 || k >= rank) fail(origin, where, "dangling reference: label index " + std::to_string(k) + " out of range");
            return k;
        }
        if (!v.is_string()) fail(origin, where, "expected a label name");
        return get(v.get<std::string>(), origin, where);
    }
    int get(const std::string& name, const std::string& origin, const std::string& where) const
    {
        auto it = byName.find(name);
        if (it == byName.end()) fail(origin, where, "dangling reference: undefined label '" + name + "'");
        return it->second;
    }
};

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<int> key_labels(const std::string& key, const LabelTable& labels, std::size_t expectLeft,
                            std::size_t expectRight, const std::string& origin, const std::string& where)
{
    const auto halves = split(key, ';');
    if (halves.size() != 2) fail(origin, where, "malformed key '" + key + "'");
    const auto l = split(halves[0], ','), r = split(halves[1], ',');
    if (l.size() != expectLeft || r.size() != expectRight) fail(origin, where, "malformed key '" + key + "'");
    std::vector<int> out;
    for (const auto& part : l) out.push_back(labels.get(trim(part), origin, where));
    for (const auto& part : r) out.push_back(labels.get(trim(part), origin, where));
    return out;
}

std::string where_key(const char* table, const std::string& key) { return std::string("/") + table + "/\"" + key + "\""; }

} // namespace

// ---------------------------------------------------------------- categories

json category_to_json(const CategoryData& cat)
{
    if (cat.is_product()) throw Error("serialize: product categories are written as \"product:<ref>\" references");
    const FusionRing& ring = cat.ring();
    const int n = cat.rank();
    json j;
    j["format"] = kCategoryFormat;
    j["version"] = 1;
    j["name"] = cat.name();
    j["gauge"] = cat.gauge_note();
    j["labels"] = json::array();
    for (int a = 0; a < n; ++a) j["labels"].push_back({{"name", ring.name(a)}, {"dual", ring.name(ring.dual(a))}});
    j["fusion"] = json::array();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (int m = ring.N(a, b, c))
                    j["fusion"].push_back(json::array({ring.name(a), ring.name(b), ring.name(c), m}));
    // ordered_json is not needed: nlohmann sorts object keys, which keeps
    // output deterministic
    json F = json::object(), R = json::object();
    cat.for_each_F_tuple([&](int a, int b, int c, int d, int e, int f) {
        if (auto v = cat.find_F(a, b, c, d, e, f))
            F[ring.name(a) + "," + ring.name(b) + "," + ring.name(c) + "," + ring.name(d) + ";" + ring.name(e) + "," +
              ring.name(f)] = complex_json(*v);
    });
    cat.for_each_R_triple([&](int a, int b, int c) {
        if (auto v = cat.find_R(a, b, c)) R[ring.name(a) + "," + ring.name(b) + ";" + ring.name(c)] = complex_json(*v);
    });
    j["F"] = std::move(F);
    j["R"] = std::move(R);
    return j;
}

std::string serialize_category(const CategoryData& cat) { return category_to_json(cat).dump(1) + "\n"; }

namespace {

CatPtr category_from_json(const json& j, const std::string& origin, double tol)
{
    check_header(j, kCategoryFormat, origin);
    if (!j.contains("labels") || !j["labels"].is_array() || j["labels"].empty())
        fail(origin, "/labels", "expected a nonempty array");
    const json& L = j["labels"];
    LabelTable labels;
    labels.rank = static_cast<int>(L.size());
    if (labels.rank > 255) fail(origin, "/labels", "at most 255 labels are supported");
    std::vector<std::string> names;
    for (std::size_t k = 0; k < L.size(); ++k) {
        const std::string where = "/labels/" + std::to_string(k);
        if (!L[k].is_object() || !L[k].contains("name") || !L[k]["name"].is_string())
            fail(origin, where, "expected {\"name\", \"dual\"}");
        const std::string name = L[k]["name"];
        if (name.empty() || name.find_first_of(",;#>") != std::string::npos)
            fail(origin, where, "label names must be nonempty and avoid , ; # >");
        if (!labels.byName.emplace(name, static_cast<int>(k)).second) fail(origin, where, "duplicate label '" + name + "'");
        names.push_back(name);
    }
    std::vector<int> dual(labels.rank);
    for (std::size_t k = 0; k < L.size(); ++k) {
        const std::string where = "/labels/" + std::to_string(k) + "/dual";
        if (!L[k].contains("dual")) fail(origin, where, "missing dual");
        dual[k] = labels.get(L[k]["dual"], origin, where);
    }
    const int n = labels.rank;
    std::vector<int> N(static_cast<std::size_t>(n) * n * n, 0);
    if (!j.contains("fusion") || !j["fusion"].is_array()) fail(origin, "/fusion", "expected an array");
    for (std::size_t k = 0; k < j["fusion"].size(); ++k) {
        const json& e = j["fusion"][k];
        const std::string where = "/fusion/" + std::to_string(k);
        if (!e.is_array() || e.size() != 4 || !e[3].is_number_integer() || e[3].get<int>() < 0)
            fail(origin, where, "expected [a, b, c, multiplicity]");
        const int a = labels.get(e[0], origin, where), b = labels.get(e[1], origin, where),
                  c = labels.get(e[2], origin, where);
        N[(static_cast<std::size_t>(a) * n + b) * n + c] = e[3].get<int>();
    }
    FusionRing ring(names, dual, N);
    if (auto msgs = ring.check(); !msgs.empty()) {
        std::string all;
        for (const auto& m : msgs) all += "\n  " + m;
        fail(origin, "/fusion", "fusion rules are inconsistent:" + all);
    }
    CategoryData::FMap F;
    CategoryData::RMap R;
    for (const char* table : {"F", "R"}) {
        if (!j.contains(table) || !j[table].is_object()) fail(origin, std::string("/") + table, "expected an object");
        const bool isF = table[0] == 'F';
        for (auto it = j[table].begin(); it != j[table].end(); ++it) {
            const std::string where = where_key(table, it.key());
            const auto idx = key_labels(it.key(), labels, isF ? 4 : 2, isF ? 2 : 1, origin, where);
            const cplx v = parse_complex(it.value(), origin, where);
            if (isF) F[pack_F(idx[0], idx[1], idx[2], idx[3], idx[4], idx[5])] = v;
            else R[pack_R(idx[0], idx[1], idx[2])] = v;
        }
    }
    const std::string name = j.value("name", std::string("unnamed"));
    CatPtr cat = CategoryData::make(name, std::move(ring), std::move(F), std::move(R), j.value("gauge", std::string()));
    const ValidationReport rep = validate(*cat, tol);
    if (!rep.ok()) {
        std::ostringstream os;
        os << "category '" << name << "' fails validation:";
        for (const auto& s : rep.structural) os << "\n  " << s;
        const std::size_t shown = std::min<std::size_t>(rep.failures.size(), 20);
        for (std::size_t k = 0; k < shown; ++k) os << "\n  " << rep.failures[k].describe(*cat);
        if (rep.failures.size() > shown) os << "\n  ... " << rep.failures.size() - shown << " more";
        fail(origin, "/", os.str());
    }
    return cat;
}

} // namespace

CatPtr parse_category(const std::string& text, const std::string& origin, double tol)
{
    return category_from_json(parse_json(text, origin), origin, tol);
}

CatPtr load_category(const std::filesystem::path& path, double tol)
{
    return parse_category(read_file(path), path.string(), tol);
}

CatPtr resolve_category(const std::string& ref, const std::filesystem::path& baseDir)
{
    if (ref.rfind("product:", 0) == 0) return product_opposite(resolve_category(ref.substr(8), baseDir));
    if (CatPtr c = try_builtin(ref)) return c;
    std::filesystem::path p(ref);
    if (p.is_relative() && !baseDir.empty()) p = baseDir / p;
    if (!std::filesystem::exists(p)) throw Error("'" + ref + "' is neither a built-in category nor a readable file");
    return load_category(p);
}

// ---------------------------------------------------------------- Q-systems

std::string tree_id(const CategoryData& cat, const Channel& ch)
{
    const FusionRing& ring = cat.ring();
    std::string s;
    for (std::size_t k = 0; k < ch.labels.size(); ++k) {
        if (k) s += ';';
        s += ring.name(ch.labels[k]) + "#" + std::to_string(ch.copies[k]);
        if (k) s += ">" + ring.name(ch.edges[k]);
    }
    return s;
}

namespace {

json category_ref(const CategoryData& cat)
{
    if (cat.is_product()) {
        json base = category_ref(*cat.base());
        if (base.is_string()) return "product:" + base.get<std::string>();
        return json{{"product_of", base}};
    }
    if (CatPtr b = try_builtin(cat.name()); b && b.get() == &cat) return cat.name();
    return category_to_json(cat);
}

json morphism_entries(const Morphism& f)
{
    const CategoryData& cat = f.category();
    const auto out = basis(cat, f.target()), in = basis(cat, f.source());
    json arr = json::array();
    for (int c = 0; c < f.rank(); ++c) {
        const Eigen::MatrixXcd& B = f.block(c);
        for (int i = 0; i < B.rows(); ++i)
            for (int k = 0; k < B.cols(); ++k)
                if (B(i, k) != 0.0)
                    arr.push_back({{"label", cat.ring().name(c)},
                                   {"out", tree_id(cat, out->channels[c][i])},
                                   {"in", tree_id(cat, in->channels[c][k])},
                                   {"value", complex_json(B(i, k))}});
    }
    return arr;
}

Morphism morphism_from_entries(const CatPtr& cat, const Space& src, const Space& tgt, const json& arr,
                               const std::string& origin, const std::string& where)
{
    if (!arr.is_array()) fail(origin, where, "expected an array of entries");
    LabelTable labels;
    labels.rank = cat->rank();
    for (int a = 0; a < cat->rank(); ++a) labels.byName.emplace(cat->ring().name(a), a);
    const auto out = basis(*cat, tgt), in = basis(*cat, src);
    auto index_of = [&](const SpaceBasis& b, int c) {
        std::map<std::string, int> m;
        for (std::size_t k = 0; k < b.channels[c].size(); ++k) m.emplace(tree_id(*cat, b.channels[c][k]), static_cast<int>(k));
        return m;
    };
    Morphism f(cat, src, tgt);
    for (std::size_t k = 0; k < arr.size(); ++k) {
        const json& e = arr[k];
        const std::string w = where + "/" + std::to_string(k);
        if (!e.is_object() || !e.contains("label") || !e.contains("out") || !e.contains("in") || !e.contains("value"))
            fail(origin, w, "expected {\"label\", \"out\", \"in\", \"value\"}");
        const int c = labels.get(e["label"], origin, w + "/label");
        const auto oi = index_of(*out, c), ii = index_of(*in, c);
        auto io = oi.find(e["out"].get<std::string>()), ik = ii.find(e["in"].get<std::string>());
        if (io == oi.end()) fail(origin, w + "/out", "dangling reference: no splitting tree '" + e["out"].get<std::string>() + "'");
        if (ik == ii.end()) fail(origin, w + "/in", "dangling reference: no splitting tree '" + e["in"].get<std::string>() + "'");
        f.block(c)(io->second, ik->second) = parse_complex(e["value"], origin, w + "/value");
    }
    return f;
}

CatPtr category_from_ref(const json& ref, const std::string& origin, const std::filesystem::path& baseDir, double tol)
{
    if (ref.is_string()) {
        try {
            return resolve_category(ref.get<std::string>(), baseDir);
        } catch (const Error& e) {
            fail(origin, "/category", e.what());
        }
    }
    if (ref.is_object() && ref.contains("product_of"))
        return product_opposite(category_from_ref(ref["product_of"], origin, baseDir, tol));
    if (ref.is_object()) return category_from_json(ref, origin + " (inline category)", tol);
    fail(origin, "/category", "expected a category reference");
}

} // namespace

json qsystem_to_json(const QSystem& q)
{
    json j;
    j["format"] = kQSystemFormat;
    j["version"] = 1;
    j["name"] = q.name;
    j["category"] = category_ref(*q.cat);
    json th = json::object();
    for (int a : q.theta.support()) th[q.cat->ring().name(a)] = q.theta.mult(a);
    j["theta"] = std::move(th);
    j["w"] = morphism_entries(q.w);
    j["x"] = morphism_entries(q.x);
    return j;
}

std::string serialize_qsystem(const QSystem& q) { return qsystem_to_json(q).dump(1) + "\n"; }

QSystem parse_qsystem(const std::string& text, const std::string& origin, const std::filesystem::path& baseDir,
                      double tol)
{
    const json j = parse_json(text, origin);
    check_header(j, kQSystemFormat, origin);
    if (!j.contains("category")) fail(origin, "/category", "missing category reference");
    QSystem q;
    q.cat = category_from_ref(j["category"], origin, baseDir, tol);
    q.name = j.value("name", std::string("unnamed"));
    LabelTable labels;
    labels.rank = q.cat->rank();
    for (int a = 0; a < q.cat->rank(); ++a) labels.byName.emplace(q.cat->ring().name(a), a);
    if (!j.contains("theta") || !j["theta"].is_object()) fail(origin, "/theta", "expected {label: multiplicity}");
    q.theta = Obj(q.cat->rank());
    for (auto it = j["theta"].begin(); it != j["theta"].end(); ++it) {
        const std::string where = "/theta/" + it.key();
        if (!it.value().is_number_integer() || it.value().get<int>() < 0) fail(origin, where, "expected a multiplicity");
        q.theta.set(labels.get(it.key(), origin, where), it.value().get<int>());
    }
    if (!j.contains("w") || !j.contains("x")) fail(origin, "/", "missing w or x");
    q.w = morphism_from_entries(q.cat, Space{}, q.th(), j["w"], origin, "/w");
    q.x = morphism_from_entries(q.cat, q.th(), Space{q.theta, q.theta}, j["x"], origin, "/x");
    const QReport rep = verify_qsystem(q);
    if (!rep.pass(tol)) fail(origin, "/", "Q-system '" + q.name + "' fails verification: " + rep.str());
    return q;
}

QSystem load_qsystem(const std::filesystem::path& path, double tol)
{
    return parse_qsystem(read_file(path), path.string(), path.parent_path(), tol);
}

QSystem resolve_qsystem(const std::string& ref, double tol)
{
    if (ref.size() > 5 && ref.substr(ref.size() - 5) == ".json") return load_qsystem(ref, tol);
    if (std::filesystem::exists(ref) && std::filesystem::is_regular_file(ref)) return load_qsystem(ref, tol);
    QSystem q = builtin_qsystem(ref);
    require_qsystem(q, tol);
    return q;
}

} // namespace qbound
