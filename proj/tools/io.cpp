#include "io.hpp"

namespace weil::io {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::config_invalid, "malformed JSON: " + what);
}

} // namespace

json field_json(const CoeffField& K) { return json{{"n", K.n()}, {"char", K.characteristic()}}; }

CoeffField field_from_json(const json& j) {
    require(j.is_object() && j.contains("n"), "field needs n");
    long n = j.at("n").get<long>();
    long ell = j.value("char", 0L);
    require(n >= 1, "n must be positive");
    return ell == 0 ? CoeffField::rational(n) : CoeffField::modular(n, ell);
}

json to_json(const CycloNum& x) {
    json c = json::array();
    for (const auto& q : x.coeffs()) c.push_back(q.get_str());
    json j = field_json(x.field());
    j["coeffs"] = c;
    return j;
}

CycloNum cyclo_from_json(const json& j) {
    CoeffField K = field_from_json(j);
    require(j.contains("coeffs") && j["coeffs"].is_array(), "coeffs array");
    std::vector<mpq_class> c;
    for (const auto& s : j["coeffs"]) {
        mpq_class q;
        if (s.is_number_integer()) q = s.get<long>();
        else {
            require(s.is_string(), "coefficient must be a string a/b");
            require(q.set_str(s.get<std::string>(), 10) == 0, "bad rational " + s.get<std::string>());
            q.canonicalize();
        }
        c.push_back(q);
    }
    return CycloNum(K, c); // longer vectors are reduced modulo the field's modulus
}

json to_json(const SubfieldTag& t) {
    json j = field_json(t.field());
    j["stabilizer_gens"] = t.generators();
    j["degree"] = t.degree();
    j["name"] = subfield_name(t);
    return j;
}

SubfieldTag tag_from_json(const json& j) {
    CoeffField K = field_from_json(j);
    std::vector<long> gens = j.value("stabilizer_gens", std::vector<long>{});
    for (long u : gens) require(K.has_automorphism(u), "stabilizer generator is not an automorphism");
    return SubfieldTag(K, gens);
}

json to_json(const Mat& m) {
    json e = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < m.cols(); ++k) e.push_back(to_json(m(i, k)));
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", e}};
}

Mat mat_from_json(const json& j) {
    require(j.contains("rows") && j.contains("cols") && j.contains("entries"), "matrix fields");
    const std::size_t r = j["rows"].get<std::size_t>(), c = j["cols"].get<std::size_t>();
    const auto& e = j["entries"];
    require(e.is_array() && e.size() == r * c && r * c > 0, "matrix entry count");
    CycloNum first = cyclo_from_json(e[0]);
    Mat m(first.field(), r, c);
    for (std::size_t i = 0; i < r * c; ++i) {
        CycloNum x = cyclo_from_json(e[i]);
        require(x.field() == first.field(), "entries from different fields");
        m(i / c, i % c) = x;
    }
    return m;
}

json to_json(const FqField& F, const FqMat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(F.coeffs(m(i, k)));
        rows.push_back(row);
    }
    return rows;
}

json to_json(const FqField& F, const SpToken& t) {
    switch (t.kind) {
    case SpToken::Kind::M: return json{{"kind", "M"}, {"a", to_json(F, t.a)}};
    case SpToken::Kind::N: return json{{"kind", "N"}, {"b", to_json(F, t.a)}};
    case SpToken::Kind::W0: return json{{"kind", "W0"}};
    }
    return json{};
}

json to_json(const MarkedRep& r) {
    json imgs = json::array();
    for (const auto& m : r.images) imgs.push_back(to_json(m));
    return json{{"field", field_json(r.field)},
                {"defined_over", to_json(r.defined_over)},
                {"dim", r.dim},
                {"label", label_name(r.label)},
                {"generators", r.generators},
                {"images", imgs}};
}

MarkedRep rep_from_json(const json& j) {
    MarkedRep r;
    r.field = field_from_json(j.at("field"));
    r.defined_over = j.contains("defined_over") ? tag_from_json(j["defined_over"]) : SubfieldTag::whole(r.field);
    r.dim = j.at("dim").get<std::size_t>();
    r.generators = j.at("generators").get<std::vector<std::string>>();
    for (const auto& m : j.at("images")) {
        Mat x = mat_from_json(m);
        require(x.field() == r.field && x.rows() == r.dim && x.cols() == r.dim, "image shape");
        r.images.push_back(std::move(x));
    }
    require(r.images.size() == r.generators.size(), "one image per generator");
    return r;
}

json to_json(const CheckList& c) {
    json a = json::array();
    for (const auto& [name, ok] : c.items) a.push_back(json{{"check", name}, {"passed", ok}});
    return a;
}

bool all_passed(const json& transcript) {
    for (const auto& e : transcript)
        if (!e.at("passed").get<bool>()) return false;
    return true;
}

json to_json(const PartDecision& d) {
    json j{{"character_field", to_json(d.character_field)},
           {"realisation_field", to_json(d.realisation_field)},
           {"schur_index", d.schur_index}};
    if (d.alternative_field) j["alternative_realisation_field"] = to_json(*d.alternative_field);
    return j;
}

json to_json(const Place& v) { return v.str(); }

json to_json(const DescentResult& r) {
    return json{{"target", to_json(r.target)},
                {"basis", to_json(r.basis)},
                {"model", to_json(r.model)},
                {"transcript", to_json(r.transcript)}};
}

json to_json(const NormSearch& s) {
    json j{{"candidates", s.candidates}, {"shell_reached", s.shell_reached}, {"exhausted", s.exhausted}};
    j["lambda"] = s.lambda ? to_json(*s.lambda) : json(nullptr);
    return j;
}

json to_json(const ObstructionReport& r) {
    return json{{"p", r.p},
                {"f", r.f},
                {"k", r.k},
                {"a", r.a},
                {"k_a", r.k_a},
                {"tau", r.tau},
                {"power_is_minus_id", r.power_is_minus_id},
                {"cm", r.cm},
                {"L", to_json(r.L)},
                {"L0", to_json(r.L0)},
                {"norm_search", to_json(r.search)},
                {"twisted_algebra_dim", r.twisted_algebra_dim},
                {"twisted_algebra_ok", r.twisted_algebra_ok},
                {"obstruction", r.obstruction},
                {"transcript", to_json(r.transcript)}};
}

json to_json(const EndAlgebra& a) {
    json j{{"field_tag", to_json(a.base)},
           {"dim", a.dim},
           {"center_dim", a.center_dim},
           {"m", a.m},
           {"commutative", a.commutative},
           {"inner", a.inner}};
    j["center_is_field"] = a.center_is_field ? json(*a.center_is_field) : json(nullptr);
    j["is_division"] = a.is_division ? json(*a.is_division) : json(nullptr);
    j["division_certificate"] = a.division_certificate;
    return j;
}

json to_json(const OrbitDecomposition& o) {
    json blocks = json::array();
    for (const auto& b : o.blocks)
        blocks.push_back(json{{"sigma", b.sigma}, {"dim", b.dim}, {"conjugate", b.conjugate}, {"class", b.iso_class}});
    return json{{"m", o.m}, {"n", o.n}, {"blocks", blocks}, {"blocks_match", o.blocks_match}};
}

json to_json(const ThetaLift& t) {
    return json{{"pi1", to_json(t.pi1)},
                {"d1_dim", t.d1_dim},
                {"theta", to_json(t.theta)},
                {"isotypic_dim", t.split.component_dim},
                {"kernel_dim", t.split.kernel_dim},
                {"split_ok", t.split.complementary && t.split.stable},
                {"factorization_ok", t.factorization_ok},
                {"irreducible", t.irreducible}};
}

json to_json(const ScalarExtensionReport& r) {
    json blocks = json::array();
    for (const auto& b : r.blocks)
        blocks.push_back(json{{"w", b.w}, {"isotypic_dim", b.isotypic_dim}, {"theta_dim", b.theta_dim},
                              {"theta_match", b.theta_match}});
    return json{{"R", to_json(r.R)},
                {"E1", to_json(r.E1)},
                {"pi1_dim", r.pi1_dim},
                {"isotypic_dim", r.isotypic_dim},
                {"theta_dim", r.theta_dim},
                {"blocks", blocks},
                {"transcript", to_json(r.transcript)}};
}

json to_json(const CommutingPair& p) {
    auto list = [](const std::vector<std::string>& names, const std::vector<Mat>& ms) {
        json a = json::array();
        for (std::size_t i = 0; i < ms.size(); ++i) a.push_back(json{{"name", names[i]}, {"matrix", to_json(ms[i])}});
        return a;
    };
    return json{{"field", field_json(p.field)}, {"dim", p.dim}, {"h1", list(p.h1_names, p.h1)}, {"h2", list(p.h2_names, p.h2)}};
}

CommutingPair pair_from_json(const json& j) {
    CommutingPair p;
    p.field = field_from_json(j.at("field"));
    p.dim = j.at("dim").get<std::size_t>();
    auto read = [&](const char* key, std::vector<std::string>& names, std::vector<Mat>& ms) {
        require(j.contains(key) && j[key].is_array(), std::string(key) + " list");
        for (const auto& e : j[key]) {
            names.push_back(e.value("name", std::string(key) + "_" + std::to_string(ms.size())));
            Mat m = mat_from_json(e.at("matrix"));
            require(m.field() == p.field && m.rows() == p.dim && m.cols() == p.dim, "pair matrix shape");
            ms.push_back(std::move(m));
        }
    };
    read("h1", p.h1_names, p.h1);
    read("h2", p.h2_names, p.h2);
    return p;
}

} // namespace weil::io
