// weil: command-line front end. Every verb writes one JSON report; elapsed
// time goes to stderr so reports are byte-identical across reruns.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "io.hpp"

using namespace weil;
using io::json;

namespace {

enum Exit { ok = 0, cert_failed = 1, config_bad = 2, too_big = 3, not_found = 4 };

int exit_code(ErrorCode c) {
    switch (c) {
    case ErrorCode::config_invalid:
    case ErrorCode::invalid_characteristic:
    case ErrorCode::field_mismatch:
    case ErrorCode::zero_input:
    case ErrorCode::bad_tower: return config_bad;
    case ErrorCode::too_large: return too_big;
    case ErrorCode::not_found_within_bound: return not_found;
    default: return cert_failed;
    }
}

struct Config {
    long p = 3;
    int f = 1;
    int m = 1;
    long twist = 1;
    long ell = 0;
    std::uint64_t seed = 1;
    std::size_t samples = 200;
    long bound = 20;
    bool exhaustive = false;
    bool allow_large = false;
    std::string part = "full";
    std::string rep = "weil";
    std::string over = "char";
    std::string out;
};

json config_json(const std::string& verb, const Config& c) {
    return json{{"command", verb}, {"p", c.p},     {"f", c.f},         {"m", c.m},
                {"twist", c.twist}, {"ell", c.ell}, {"seed", c.seed},  {"samples", c.samples},
                {"bound", c.bound}, {"exhaustive", c.exhaustive},     {"part", c.part},
                {"rep", c.rep},     {"over", c.over}};
}

Part parse_part(const std::string& s) {
    if (s == "full") return Part::full;
    if (s == "even") return Part::even;
    if (s == "odd") return Part::odd;
    throw Error(ErrorCode::config_invalid, "part must be full, even or odd");
}

struct Setup {
    const FqField* F;
    SymplecticSpace space;
    AdditiveCharacter psi;
};

Setup make_setup(const Config& c) {
    if (c.p == 2) throw Error(ErrorCode::config_invalid, "characteristic 2 is excluded");
    if (!is_prime(c.p)) throw Error(ErrorCode::config_invalid, "p must be an odd prime");
    if (c.f < 1 || c.m < 1) throw Error(ErrorCode::config_invalid, "f and m must be positive");
    if (c.ell != 0 && (!is_prime(c.ell) || c.ell == c.p)) throw Error(ErrorCode::config_invalid, "ell must be a prime other than p");
    double size = std::pow(static_cast<double>(c.p), c.f * c.m);
    if (size > 200 && !c.allow_large) throw Error(ErrorCode::too_large, "q^m exceeds 200; pass --allow-large");
    if (std::pow(static_cast<double>(c.p), c.f) > 2048) throw Error(ErrorCode::too_large, "q exceeds the table limit 2048");
    const FqField& F = FqField::get(c.p, c.f);
    if (c.twist <= 0 || c.twist >= F.q()) throw Error(ErrorCode::config_invalid, "twist must index a nonzero element of F_q");
    return Setup{&F, SymplecticSpace(F, c.m), AdditiveCharacter(F, default_coeff_field(c.p, c.ell), static_cast<Fq>(c.twist))};
}

MarkedRep pick_rep(const WeilModel& w, const Config& c) {
    if (c.rep == "heisenberg") return w.heisenberg_rep();
    if (c.rep == "weil") return w.rep(parse_part(c.part));
    throw Error(ErrorCode::config_invalid, "rep must be weil or heisenberg");
}

void add_checks(json& transcript, const CheckList& c, const std::string& prefix = "") {
    for (const auto& [name, passed] : c.items) transcript.push_back(json{{"check", prefix + name}, {"passed", passed}});
}

void add_check(json& transcript, const std::string& name, bool passed) {
    transcript.push_back(json{{"check", name}, {"passed", passed}});
}

// ---------------------------------------------------------------------------

json cmd_build(const Config& c, json& tr) {
    Setup s = make_setup(c);
    WeilModel w(s.space, s.psi);
    MarkedRep r = pick_rep(w, c);
    json tokens = json::array();
    for (const auto& t : sp_generators(s.space)) tokens.push_back(io::to_json(*s.F, t));
    CocycleCert cert = cocycle_certificate(w, c.exhaustive, c.samples, c.seed);
    add_check(tr, "generator images invertible", r.images_invertible());
    add_check(tr, "cocycle values in {+1,-1}", cert.ok());
    return json{{"rep", io::to_json(r)},
                {"generator_tokens", tokens},
                {"cocycle", json{{"pairs", cert.pairs}, {"plus", cert.plus}, {"minus", cert.minus},
                                 {"exhaustive", cert.exhaustive}}}};
}

json cmd_verify(const Config& c, json& tr) {
    Setup s = make_setup(c);
    WeilModel w(s.space, s.psi);
    json res;
    add_checks(tr, intertwining_check(w), "intertwining: ");
    for (Fq g = 1; g < static_cast<Fq>(s.F->q()); ++g)
        add_checks(tr, weil_twist_check(s.space, s.psi, g), "twist gamma=" + s.F->str(g) + ": ");
    for (long u : w.field().galois_group())
        add_checks(tr, semilinearity_check(w, u, c.seed, 4), "semilinearity: ");
    CocycleCert cert = cocycle_certificate(w, c.exhaustive, c.samples, c.seed);
    add_check(tr, "cocycle values in {+1,-1}", cert.ok());
    res["cocycle"] = json{{"pairs", cert.pairs}, {"plus", cert.plus}, {"minus", cert.minus}, {"exhaustive", cert.exhaustive}};
    if (w.dim() <= 30) {
        MarkedRep h = w.heisenberg_rep();
        add_check(tr, "Heisenberg commutant is 1-dimensional", intertwiners(h, h).size() == 1);
        add_check(tr, "Heisenberg rationality field is the whole field", rationality_field(h) == SubfieldTag::whole(h.field));
        res["stone_von_neumann"] = "checked";
    } else {
        res["stone_von_neumann"] = "skipped: dimension above 30";
    }
    return res;
}

json cmd_character_field(const Config& c, json& tr) {
    Setup s = make_setup(c);
    WeilModel w(s.space, s.psi);
    MarkedRep r = pick_rep(w, c);
    CharacterField cf = character_field(r, 200000, c.seed);
    json res{{"field_tag", io::to_json(cf.tag)}, {"method", cf.method}, {"elements", cf.elements}};
    add_check(tr, "character field computed (" + cf.method + ")", true);
    if (c.ell == 0 && c.m == 1 && c.rep == "weil" && c.part != "full") {
        SchurDecision d = schur_index_decision(c.p, c.f);
        const auto& pd = c.part == "even" ? d.even : d.odd;
        add_check(tr, "agrees with the closed-form table", same_subfield(cf.tag, pd.character_field));
    }
    return res;
}

SubfieldTag base_field(const MarkedRep& r, const Config& c) {
    if (c.over == "char") return character_field(r, 200000, c.seed).tag;
    if (c.over == "prime") return SubfieldTag::prime(r.field);
    if (c.over == "whole") return SubfieldTag::whole(r.field);
    throw Error(ErrorCode::config_invalid, "over must be char, prime or whole");
}

json cmd_end_algebra(const Config& c, json& tr) {
    Setup s = make_setup(c);
    WeilModel w(s.space, s.psi);
    MarkedRep r = pick_rep(w, c);
    SubfieldTag R = base_field(r, c);
    EndAlgebra a = endomorphism_algebra(r, R);
    json res = io::to_json(a);
    add_check(tr, "dim = m^2 * center_dim", a.m * a.m * a.center_dim == a.dim);
    if (a.center_is_field) add_check(tr, "center is a field", *a.center_is_field);
    if (a.center_is_field.value_or(false) && a.is_division.value_or(false)) {
        OrbitDecomposition o = orbit_decomposition(r, R);
        res["orbits"] = io::to_json(o);
        res["n"] = o.n;
        add_check(tr, "scalar-extension blocks match Galois conjugates", o.blocks_match);
    } else {
        res["n"] = nullptr;
    }
    return res;
}

json cmd_descend(const Config& c, bool obstruction, json& tr) {
    Setup s = make_setup(c);
    const Part part = parse_part(c.part);
    if (obstruction && part != Part::odd) throw Error(ErrorCode::config_invalid, "--obstruction needs --part odd");
    json res;
    if (part == Part::odd) {
        OddRealisation o = realise_odd(s.space, c.ell, c.bound);
        res["character_field"] = io::to_json(o.character_field);
        res["schur_index"] = o.schur_index;
        res["lambda"] = o.lambda ? io::to_json(*o.lambda) : json(nullptr);
        res["descent"] = io::to_json(o.result);
        add_checks(tr, o.result.transcript);
        if (o.lambda) {
            NormTower t = make_tower(SubfieldTag::whole(o.lambda->field()), o.target, o.generator);
            add_check(tr, "N(lambda) = -1 exactly", tower_norm(t, *o.lambda) == o.lambda->field().from_int(-1));
        }
        if (c.ell == 0 && c.m == 1) {
            SchurDecision d = schur_index_decision(c.p, c.f);
            add_check(tr, "realisation field agrees with the closed-form table", same_subfield(o.target, d.odd.realisation_field));
            add_check(tr, "Schur index agrees with the closed-form table", o.schur_index == d.odd.schur_index);
        }
        if (obstruction) {
            if (c.ell != 0) throw Error(ErrorCode::config_invalid, "the obstruction check is for rational coefficients");
            ObstructionReport ob = odd_obstruction_check(s.space, c.bound);
            res["obstruction"] = io::to_json(ob);
            add_checks(tr, ob.transcript, "obstruction: ");
        }
        return res;
    }
    if (s.psi.K.n() != c.p) throw Error(ErrorCode::config_invalid, "descent expects coefficients in Q(zeta_p)");
    WeilModel w(s.space, s.psi);
    DescentDatum d = part == Part::full ? descent_datum_weil(w) : descent_datum_even(w);
    DescentResult r = fixed_points(d);
    res["descent"] = io::to_json(r);
    add_checks(tr, r.transcript);
    return res;
}

// "N:TOP:BASE:GEN" with TOP, BASE comma lists of stabilizer generators
NormTower parse_tower(const std::string& text, long ell) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 4) throw Error(ErrorCode::config_invalid, "tower must be N:TOP:BASE:GEN");
    auto nums = [](const std::string& s) {
        std::vector<long> v;
        std::stringstream ls(s);
        for (std::string x; std::getline(ls, x, ',');)
            if (!x.empty()) v.push_back(std::stol(x));
        return v;
    };
    long n = std::stol(parts[0]);
    if (n < 1) throw Error(ErrorCode::config_invalid, "tower needs n >= 1");
    CoeffField K = ell == 0 ? CoeffField::rational(n) : CoeffField::modular(n, ell);
    for (const auto& s : {parts[1], parts[2]})
        for (long u : nums(s))
            if (!K.has_automorphism(u)) throw Error(ErrorCode::config_invalid, "not an automorphism: " + std::to_string(u));
    return make_tower(SubfieldTag(K, nums(parts[1])), SubfieldTag(K, nums(parts[2])), std::stol(parts[3]));
}

json cmd_norm_solve(const Config& c, const std::string& tower, std::size_t max_candidates, json& tr, bool& missing) {
    NormTower t = parse_tower(tower, c.ell);
    NormSearch s = search_norm_minus_one(t, c.bound, max_candidates);
    json res{{"top", io::to_json(t.top)}, {"base", io::to_json(t.base)}, {"generator", t.generator},
             {"degree", t.degree()}, {"search", io::to_json(s)}};
    missing = !s.lambda;
    if (s.lambda) {
        add_check(tr, "lambda lies in the top field", subfield_membership(*s.lambda, t.top));
        add_check(tr, "N(lambda) = -1 exactly", tower_norm(t, *s.lambda) == t.top.field().from_int(-1));
    }
    return res;
}

std::vector<MarkedRep> pair_irreps(const CommutingPair& p, const json& doc) {
    std::vector<MarkedRep> out;
    if (doc.contains("pi1")) {
        for (const auto& vals : doc["pi1"]) {
            std::vector<CycloNum> v;
            for (const auto& x : vals) v.push_back(io::cyclo_from_json(x));
            out.push_back(character_rep(p, v));
        }
        return out;
    }
    if (p.h1.size() == 1 && (p.h1[0] * p.h1[0]).is_identity()) return sign_characters(p);
    throw Error(ErrorCode::config_invalid, "pair file needs a pi1 list unless H1 is generated by one involution");
}

json cmd_theta(const Config& c, const std::string& pair_path, const std::string& emit_pair, json& tr) {
    json res;
    CommutingPair pair;
    json doc = json::object();
    std::optional<Setup> setup;
    if (!pair_path.empty()) {
        std::ifstream in(pair_path);
        if (!in) throw Error(ErrorCode::config_invalid, "cannot read " + pair_path);
        try {
            doc = json::parse(in);
        } catch (const json::exception& e) {
            throw Error(ErrorCode::config_invalid, std::string("pair file: ") + e.what());
        }
        pair = io::pair_from_json(doc);
    } else {
        setup = make_setup(c);
        pair = center_pair(WeilModel(setup->space, setup->psi));
    }
    if (!emit_pair.empty()) {
        std::ofstream o(emit_pair);
        o << io::to_json(pair).dump(1) << "\n";
    }
    ThetaSuite suite = theta_suite(pair, pair_irreps(pair, doc));
    json lifts = json::array();
    for (const auto& l : suite.lifts) lifts.push_back(io::to_json(l));
    res["lifts"] = lifts;
    res["irr"] = suite.irr;
    res["uni"] = suite.uni;
    res["joint_projection"] = suite.joint_projection;
    add_checks(tr, suite.transcript);
    if (setup) {
        json eq = json::array();
        for (long u : setup->psi.K.galois_group()) {
            CheckList cl = theta_galois_equivariance(setup->space, setup->psi, u);
            add_checks(tr, cl);
            eq.push_back(json{{"sigma", u}, {"passed", cl.all_passed()}});
        }
        res["galois_equivariance"] = eq;
    }
    return res;
}

mpq_class parse_rational(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw Error(ErrorCode::config_invalid, "not a rational number: " + s);
    q.canonicalize();
    if (q == 0) throw Error(ErrorCode::zero_input, "Hilbert symbol of zero");
    return q;
}

json cmd_hilbert(const std::string& as, const std::string& bs, const std::string& place, json& tr) {
    mpq_class a = parse_rational(as), b = parse_rational(bs);
    json res{{"a", a.get_str()}, {"b", b.get_str()}};
    if (!place.empty()) {
        Place v = place == "inf" ? Place::infinity() : Place::prime(std::stol(place));
        int h = hilbert_symbol(a, b, v);
        res["place"] = v.str();
        res["symbol"] = h;
        if (!v.is_infinite()) add_check(tr, "closed form agrees with the solubility search", hilbert_symbol_search(a, b, v.v) == h);
        return res;
    }
    auto ram = quaternion_ramification(a, b);
    json places = json::array();
    for (const auto& v : ram) places.push_back(v.str());
    res["ramification"] = places;
    res["split"] = ram.empty();
    add_check(tr, "even number of ramified places", ram.size() % 2 == 0);
    return res;
}

json cmd_p2(const std::string& cls, json& tr) {
    auto a = parse_square_class(cls);
    if (!a) throw Error(ErrorCode::config_invalid, "A must be full, class3, class5, classMinus1 or squaresOnly");
    P2Tables t = p2_field_tables(*a);
    SquareClassGroupA q2 = compute_A_for_Q2();
    add_check(tr, "A for Q_2 is squaresOnly", q2 == SquareClassGroupA::squaresOnly);
    return json{{"A", square_class_name(*a)}, {"members", square_class_members(*a)}, {"even", io::to_json(t.even)},
                {"odd", io::to_json(t.odd)}, {"A_for_Q2", square_class_name(q2)}};
}

// q = 25 takes ~30 s; q = 49 exhausts memory in the character-field sweep.
constexpr long kConstructiveLimit = 25;

json table_row(long p, int f, bool constructive, json& tr) {
    SchurDecision d = schur_index_decision(p, f);
    json row{{"p", p},
             {"f", f},
             {"q", d.q},
             {"character_field", subfield_name(d.even.character_field)},
             {"realisation_even", subfield_name(d.even.realisation_field)},
             {"realisation_odd", subfield_name(d.odd.realisation_field)},
             {"schur_index_odd", d.odd.schur_index}};
    if (!constructive) return row;
    if (d.q > kConstructiveLimit) {
        row["constructive"] = "skipped: q above " + std::to_string(kConstructiveLimit);
        return row;
    }
    const FqField& F = FqField::get(p, f);
    SymplecticSpace s(F, 1);
    WeilModel w(s, AdditiveCharacter(F, default_coeff_field(p)));
    const std::string tag = "q=" + std::to_string(d.q) + ": ";
    for (Part part : {Part::even, Part::odd}) {
        CharacterField cf = character_field(w.rep(part));
        add_check(tr, tag + part_name(part) + " character field matches", same_subfield(cf.tag, d.even.character_field));
    }
    OddRealisation o = realise_odd(s);
    add_check(tr, tag + "odd realisation certified", o.result.transcript.all_passed());
    add_check(tr, tag + "odd realisation field matches", same_subfield(o.target, d.odd.realisation_field));
    add_check(tr, tag + "odd Schur index matches", o.schur_index == d.odd.schur_index);
    row["constructive"] = "certified";
    return row;
}

std::string csv_of(const json& rows) {
    std::ostringstream os;
    os << "q,character_field,realisation_even,realisation_odd,schur_index_odd\n";
    for (const auto& r : rows)
        os << r["q"].get<long>() << "," << r["character_field"].get<std::string>() << ","
           << r["realisation_even"].get<std::string>() << "," << r["realisation_odd"].get<std::string>() << ","
           << r["schur_index_odd"].get<int>() << "\n";
    return os.str();
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream o(path);
    if (!o) throw Error(ErrorCode::config_invalid, "cannot write " + path);
    o << text;
}

void add_common(CLI::App* sub, Config& c, bool matrix) {
    if (matrix) {
        sub->add_option("--p", c.p, "odd prime")->required();
        sub->add_option("--f", c.f, "degree of F_q over F_p");
        sub->add_option("--m", c.m, "half dimension of W");
        sub->add_option("--twist", c.twist, "additive character twist, as an F_q element index");
        sub->add_option("--ell", c.ell, "coefficient characteristic (0 = rational)");
        sub->add_flag("--allow-large", c.allow_large, "allow q^m > 200");
    }
    sub->add_option("--seed", c.seed, "seed for sampled checks");
    sub->add_option("--out", c.out, "output file (default stdout)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weil representations over cyclotomic fields: models, fields, descent, theta lifts"};
    app.require_subcommand(1);
    Config c;
    bool obstruction = false;
    std::string tower, pair_path, emit_pair, ha, hb, place, a_class = "full";
    std::vector<long> table_p{3, 5, 7};
    std::vector<int> table_f{1, 2};
    bool constructive = false, csv = false;
    std::size_t max_candidates = 5000000;

    auto* build = app.add_subcommand("build", "emit the Weil (or Heisenberg) representation");
    add_common(build, c, true);
    build->add_option("--part", c.part, "full, even or odd");
    build->add_option("--rep", c.rep, "weil or heisenberg");
    build->add_flag("--exhaustive", c.exhaustive, "certify the cocycle on all pairs");
    build->add_option("--samples", c.samples, "sampled cocycle pairs");

    auto* verify = app.add_subcommand("verify", "run the Weil-model property suite");
    add_common(verify, c, true);
    verify->add_flag("--exhaustive", c.exhaustive, "certify the cocycle on all pairs");
    verify->add_option("--samples", c.samples, "sampled cocycle pairs");

    auto* chf = app.add_subcommand("character-field", "character field of a representation");
    add_common(chf, c, true);
    chf->add_option("--part", c.part, "full, even or odd");
    chf->add_option("--rep", c.rep, "weil or heisenberg");

    auto* endo = app.add_subcommand("end-algebra", "endomorphism algebra over a subfield");
    add_common(endo, c, true);
    endo->add_option("--part", c.part, "full, even or odd");
    endo->add_option("--rep", c.rep, "weil or heisenberg");
    endo->add_option("--over", c.over, "char, prime or whole");

    auto* desc = app.add_subcommand("descend", "Galois descent of the Weil representation or a part");
    add_common(desc, c, true);
    desc->add_option("--part", c.part, "full, even or odd");
    desc->add_option("--bound", c.bound, "height bound for norm searches");
    desc->add_flag("--obstruction", obstruction, "add the odd-part obstruction check");

    auto* norm = app.add_subcommand("norm-solve", "bounded search for an element of relative norm -1");
    add_common(norm, c, false);
    norm->add_option("--tower", tower, "N:TOP:BASE:GEN (stabilizer generators, Galois generator)")->required();
    norm->add_option("--ell", c.ell, "coefficient characteristic (0 = rational)");
    norm->add_option("--bound", c.bound, "coefficient and denominator bound");
    norm->add_option("--max-candidates", max_candidates, "candidate cap");

    auto* theta = app.add_subcommand("theta", "isotypic quotients and theta lifts");
    add_common(theta, c, false);
    theta->add_option("--pair", pair_path, "pair JSON file");
    theta->add_option("--p", c.p, "odd prime (center pair when no file is given)");
    theta->add_option("--f", c.f, "degree of F_q over F_p");
    theta->add_option("--m", c.m, "half dimension of W");
    theta->add_option("--twist", c.twist, "additive character twist");
    theta->add_option("--ell", c.ell, "coefficient characteristic");
    theta->add_flag("--allow-large", c.allow_large, "allow q^m > 200");
    theta->add_option("--emit-pair", emit_pair, "write the pair JSON used");

    auto* hil = app.add_subcommand("hilbert", "Hilbert symbol or quaternion ramification");
    add_common(hil, c, false);
    hil->add_option("a", ha, "nonzero rational")->required();
    hil->add_option("b", hb, "nonzero rational")->required();
    hil->add_option("-v,--place", place, "prime or inf");

    auto* p2 = app.add_subcommand("p2", "field tables for p = 2");
    add_common(p2, c, false);
    p2->add_option("--A", a_class, "full, class3, class5, classMinus1 or squaresOnly");

    auto* table = app.add_subcommand("table", "character and realisation fields for p odd");
    add_common(table, c, false);
    table->add_option("--p", table_p, "odd primes");
    table->add_option("--f", table_f, "degrees");
    table->add_flag("--constructive", constructive, "cross-certify rows with q <= 25 constructively");
    table->add_flag("--csv", csv, "emit CSV derived from the JSON rows");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? ok : config_bad;
    }

    const auto t0 = std::chrono::steady_clock::now();
    CLI::App* sub = app.get_subcommands().front();
    const std::string verb = sub->get_name();
    json transcript = json::array();
    json report{{"config", config_json(verb, c)}};
    int code = ok;
    try {
        json results;
        bool missing = false;
        if (verb == "build") results = cmd_build(c, transcript);
        else if (verb == "verify") results = cmd_verify(c, transcript);
        else if (verb == "character-field") results = cmd_character_field(c, transcript);
        else if (verb == "end-algebra") results = cmd_end_algebra(c, transcript);
        else if (verb == "descend") results = cmd_descend(c, obstruction, transcript);
        else if (verb == "norm-solve") {
            report["config"]["tower"] = tower;
            report["config"]["max_candidates"] = max_candidates;
            results = cmd_norm_solve(c, tower, max_candidates, transcript, missing);
        } else if (verb == "theta") {
            report["config"]["pair"] = pair_path;
            results = cmd_theta(c, pair_path, emit_pair, transcript);
        } else if (verb == "hilbert") {
            report["config"] = json{{"command", verb}, {"a", ha}, {"b", hb}, {"place", place}};
            results = cmd_hilbert(ha, hb, place, transcript);
        } else if (verb == "p2") {
            report["config"] = json{{"command", verb}, {"A", a_class}};
            results = cmd_p2(a_class, transcript);
        } else if (verb == "table") {
            report["config"] = json{{"command", verb}, {"p", table_p}, {"f", table_f}, {"constructive", constructive}};
            json rows = json::array();
            for (long p : table_p)
                for (int f : table_f) rows.push_back(table_row(p, f, constructive, transcript));
            results["rows"] = rows;
            if (csv) {
                emit(c.out, csv_of(rows));
                std::cerr << "elapsed "
                          << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
                return io::all_passed(transcript) ? ok : cert_failed;
            }
        }
        report["results"] = results;
        report["transcript"] = transcript;
        report["passed"] = io::all_passed(transcript) && !missing;
        if (missing) code = not_found;
        else if (!io::all_passed(transcript)) code = cert_failed;
    } catch (const Error& e) {
        report["error"] = json{{"code", error_name(e.code())}, {"message", e.what()}};
        report["transcript"] = transcript;
        report["passed"] = false;
        code = exit_code(e.code());
        std::cerr << e.what() << "\n";
    }
    emit(c.out, report.dump(2) + "\n");
    std::cerr << "elapsed " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
    return code;
}
