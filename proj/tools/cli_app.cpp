#include "cli_app.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>

#include "spinstat/spinstat.hpp"

namespace spinstat::cli {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string format = "json";
    std::string mode = "exact";
    std::uint64_t seed = 0;

    Mode arithmetic() const { return mode == "float" ? Mode::Float : Mode::Exact; }
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    sub->add_option("--mode", c.mode, "Arithmetic mode")->check(CLI::IsMember({"exact", "float"}))->capture_default_str();
    sub->add_option("--seed", c.seed, "Random seed (default: $SPINSTAT_SEED, else 0)")->envname("SPINSTAT_SEED");
}

// Malformed flag values are usage errors, not domain errors.
template <class F>
auto flag_value(const std::string& flag, F&& parse) {
    try {
        return parse();
    } catch (const Error& e) {
        if (e.code() != ErrorCode::Parse) throw;
        throw UsageError(flag + ": " + e.what());
    }
}

std::vector<std::string> split(const std::string& s, char delim) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, delim)) out.push_back(item);
    if (!s.empty() && s.back() == delim) out.emplace_back();
    return out;
}

std::vector<Angle> parse_angles(const std::string& flag, const std::string& text, std::size_t count, Mode mode) {
    std::vector<Angle> out;
    for (const auto& part : split(text, ',')) {
        Angle a = flag_value(flag, [&] { return Angle::parse(part); });
        out.push_back(mode == Mode::Float ? Angle::radians(a.to_radians()) : a);
    }
    if (out.size() != count) throw UsageError(flag + ": expected " + std::to_string(count) + " comma-separated angles");
    return out;
}

std::vector<Rational> parse_rationals(const std::string& flag, const std::string& text) {
    std::vector<Rational> out;
    for (const auto& part : split(text, ',')) out.push_back(flag_value(flag, [&] { return Rational::parse(part); }));
    return out;
}

HalfInt parse_half(const std::string& flag, const std::string& text) {
    return flag_value(flag, [&] { return HalfInt::parse(text); });
}

Rational parse_rational(const std::string& flag, const std::string& text) {
    return flag_value(flag, [&] { return Rational::parse(text); });
}

// Exact values are written as strings next to a "_float" twin.
void put_prob(Json& o, const std::string& key, const Probability& p, Mode mode) {
    if (mode == Mode::Exact && p.exact)
        o[key] = p.exact->to_string();
    else
        o[key] = p.value;
    o[key + "_float"] = p.value;
}

void put_rational(Json& o, const std::string& key, const Rational& r, Mode mode) {
    put_prob(o, key, Probability::of(r), mode);
}

void put_scalar(Json& o, const std::string& key, const ExactScalar& s, Mode mode) {
    if (mode == Mode::Exact)
        o[key] = s.to_string();
    else
        o[key] = s.to_double();
    o[key + "_float"] = s.to_double();
}

Json angle_json(const Angle& a) { return a.to_string(); }

Json angles_json(const auto& angles) {
    Json out = Json::array();
    for (const auto& a : angles) out.push_back(angle_json(a));
    return out;
}

using LevelNamer = std::function<std::string(std::size_t slot, int index)>;

std::string spin_level_name(int dim, int index) {
    if (dim == 2) return index == 0 ? "+" : "-";
    return HalfInt::from_twice(dim - 1 - 2 * index).to_string();
}

LevelNamer default_namer(const Ket& k) {
    return [dims = k.dims()](std::size_t slot, int index) { return spin_level_name(dims[slot], index); };
}

std::string label_text(const BasisLabel& label, const LevelNamer& name) {
    std::vector<std::string> parts;
    bool compact = true;
    for (std::size_t s = 0; s < label.size(); ++s) {
        parts.push_back(name(s, label[s]));
        compact = compact && parts.back().size() == 1;
    }
    std::string out;
    for (std::size_t s = 0; s < parts.size(); ++s) out += (compact || s == 0 ? "" : " ") + parts[s];
    return out;
}

Json ket_json(const Ket& k, Mode mode, const LevelNamer& name) {
    Json o;
    o["dims"] = k.dims();
    o["mode"] = std::string(mode_name(k.mode()));
    o["is_zero"] = k.is_zero();
    if (auto n2 = k.norm_squared_exact(); n2 && mode == Mode::Exact)
        put_rational(o, "norm_squared", *n2, mode);
    else
        put_prob(o, "norm_squared", Probability::approx(k.norm_squared()), mode);
    Json amps = Json::array();
    for (const auto& [label, value] : k.amplitudes()) {
        Json e;
        e["label"] = label_text(label, name);
        const Complex z = value.to_complex();
        if (mode == Mode::Exact && value.is_exact())
            e["amplitude"] = value.exact().to_string();
        else
            e["amplitude"] = z.real();
        e["amplitude_float"] = z.real();
        e["amplitude_imag"] = z.imag();
        amps.push_back(std::move(e));
    }
    o["amplitudes"] = std::move(amps);
    return o;
}

Json table_json(const ProbabilityTable& t, Mode mode) {
    Json rows = Json::array();
    for (const auto& e : t.entries()) {
        Json r;
        r["event"] = e.event;
        put_prob(r, "p", e.p, mode);
        rows.push_back(std::move(r));
    }
    return rows;
}

// ---- state ----------------------------------------------------------------

struct StateOpts {
    std::string name;
    std::string file;
    std::string c = "1/2";
    int grid = 360;
    bool check_invariance = false;
    bool check_isc = false;
    bool decompose = false;
    int conjugate_slot = -1;
};

Json run_state(const StateOpts& o, Mode mode) {
    if (o.name.empty() == o.file.empty()) throw UsageError("state: give exactly one of NAME or --file");
    const Rational c = parse_rational("--c", o.c);
    Json p;
    Ket k;
    std::optional<NamedState> named;
    if (!o.file.empty()) {
        StateFile f = StateFile::load(o.file);
        if (!f.ket) throw Error(ErrorCode::InvalidArgument, "state file has no ket block");
        k = *f.ket;
        p["source"] = o.file;
    } else {
        named = NamedState::parse(o.name);
        k = make_state(*named);
        p["source"] = named->name();
    }
    if (mode == Mode::Float) k = k.to_float();
    p["ket"] = ket_json(k, mode, default_namer(k));

    if (o.check_invariance) {
        InvarianceResult r = is_rotationally_invariant(k, c, o.grid);
        Json j;
        j["c"] = c.to_string();
        j["grid"] = o.grid;
        j["invariant"] = r.invariant;
        j["max_deviation"] = r.max_deviation;
        j["exact"] = r.exact;
        j["worst_angle"] = r.worst_angle ? angle_json(*r.worst_angle) : Json(nullptr);
        p["invariance"] = std::move(j);
    }
    if (o.check_isc) {
        IscResult r = is_isc(k, c, o.grid);
        Json j;
        j["c"] = c.to_string();
        j["grid"] = o.grid;
        j["isc"] = r.isc;
        j["rotationally_invariant"] = r.rotationally_invariant;
        j["max_violation"] = r.max_violation;
        j["witness"] = r.witness ? angle_json(*r.witness) : Json(nullptr);
        p["isc"] = std::move(j);
    }
    if (o.conjugate_slot >= 0) {
        Ket conj = conjugate_spinor_slot(k, static_cast<std::size_t>(o.conjugate_slot));
        Json j;
        j["slot"] = o.conjugate_slot;
        j["ket"] = ket_json(conj, mode, default_namer(conj));
        p["conjugated"] = std::move(j);
    }
    if (o.decompose) {
        if (!named || named->tag != StateTag::SpinJSinglet)
            throw Error(ErrorCode::InvalidArgument, "--decompose applies to spin_j_singlet(j) only");
        SingletDecomposition d = decompose_spin_j_singlet(named->j);
        Json j;
        j["j"] = d.j.to_string();
        Json pairs = Json::array();
        for (const auto& pair : d.pairs) {
            Json e;
            e["m"] = pair.m.to_string();
            put_scalar(e, "weight", pair.weight, mode);
            e["antisymmetric"] = pair.antisymmetric;
            pairs.push_back(std::move(e));
        }
        j["pairs"] = std::move(pairs);
        if (d.center)
            put_scalar(j, "center_weight", d.center_weight, mode);
        else
            j["center_weight"] = nullptr;
        j["resum_matches"] = d.resum() == make_state(*named);
        p["decomposition"] = std::move(j);
    }
    return p;
}

// ---- bell -----------------------------------------------------------------

struct BellOpts {
    std::string gaps;
    bool search = false;
    int divisions = 24;
    std::string rate = "half";
};

Json bell_json(const BellEvaluation& e, Mode mode) {
    Json o;
    o["gaps"] = angles_json(e.gaps);
    Json rad = Json::array();
    for (const auto& g : e.gaps) rad.push_back(g.to_radians());
    o["gaps_radians"] = std::move(rad);
    o["rate"] = e.mode == BellMode::Half ? "half" : "full";
    put_prob(o, "lhs", e.lhs, mode);
    put_prob(o, "rhs", e.rhs, mode);
    put_prob(o, "margin", e.margin, mode);
    o["violated"] = e.violated;
    // Same comparison with both sides doubled: sin^2 instead of 1/2 sin^2.
    auto twice = [](const Probability& p) {
        return Probability{2 * p.value, p.exact ? std::optional<Rational>(*p.exact * Rational(2)) : std::nullopt};
    };
    Json d;
    put_prob(d, "lhs", twice(e.lhs), mode);
    put_prob(d, "rhs", twice(e.rhs), mode);
    o["doubled"] = std::move(d);
    return o;
}

Json run_bell(const BellOpts& o, Mode mode) {
    if (o.gaps.empty() == !o.search) throw UsageError("bell: give exactly one of --gaps or --search");
    const BellMode rate = o.rate == "full" ? BellMode::Full : BellMode::Half;
    if (!o.search) {
        auto g = parse_angles("--gaps", o.gaps, 3, mode);
        return bell_json(bell_inequality(g[0], g[1], g[2], rate), mode);
    }
    BellSearch s = bell_grid_search(o.divisions, rate);
    Json p;
    p["divisions"] = o.divisions;
    p["rate"] = o.rate;
    p["directions_checked"] = s.directions_checked;
    p["violation_count"] = s.violations.size();
    p["strongest"] = s.strongest ? bell_json(*s.strongest, mode) : Json(nullptr);
    Json v = Json::array();
    for (const auto& e : s.violations) v.push_back(bell_json(e, mode));
    p["violations"] = std::move(v);
    return p;
}

// ---- wigner ---------------------------------------------------------------

struct WignerOpts {
    std::string angles = "0,pi/3,2pi/3";
    std::string variant = "same_state";
    std::string c = "1/2";
};

Json run_wigner(const WignerOpts& o, Mode mode) {
    auto a = parse_angles("--angles", o.angles, 3, mode);
    const auto variant = o.variant == "singlet_inclusive" ? WignerVariant::SingletInclusive : WignerVariant::SameState;
    WignerResult r = wigner_argument(a[0], a[1], a[2], variant, parse_rational("--c", o.c));
    Json p;
    p["variant"] = o.variant;
    p["directions"] = angles_json(r.directions);
    p["outcomes"] = r.outcomes;
    p["subset"] = r.subset;
    p["superset"] = r.superset;
    p["pair_events"] = table_json(r.pair_events, mode);
    put_prob(p, "subset_probability", r.subset_probability, mode);
    put_prob(p, "superset_probability", r.superset_probability, mode);
    p["inclusion_verified"] = r.inclusion_verified;
    p["consistent"] = r.consistent;
    return p;
}

// ---- perm -----------------------------------------------------------------

struct PermOpts {
    std::string op;
    std::string file;
    std::string construct = "file";
};

LevelNamer orbital_namer(const std::vector<SingleParticleState>& states) {
    std::vector<std::string> orbitals;
    for (const auto& s : states)
        if (std::find(orbitals.begin(), orbitals.end(), s.q_label) == orbitals.end()) orbitals.push_back(s.q_label);
    const int spinor_dim = states.front().spinor.dims().front();
    return [orbitals, spinor_dim](std::size_t, int index) {
        return orbitals[static_cast<std::size_t>(index / spinor_dim)] + spin_level_name(spinor_dim, index % spinor_dim);
    };
}

Json classification_json(const StatisticsClass& c) {
    Json o;
    o["statistics"] = statistics_name(c.tag);
    o["vanishing"] = c.vanishing;
    Json t = Json::array();
    for (const auto& [pair, sign] : c.transpositions) {
        Json e;
        e["i"] = pair.first + 1;
        e["j"] = pair.second + 1;
        e["sign"] = sign ? Json(*sign) : Json(nullptr);
        t.push_back(std::move(e));
    }
    o["transpositions"] = std::move(t);
    return o;
}

Json expansion_json(const PermutationExpansion& e, Mode mode) {
    Json rows = Json::array();
    const auto perms = Permutation::all(static_cast<int>(e.particle_count()));
    for (std::size_t i = 0; i < perms.size(); ++i) {
        Json r;
        r["permutation"] = perms[i].to_string();
        const Scalar& c = e.coefficients[i];
        if (mode == Mode::Exact && c.is_exact())
            r["coefficient"] = c.exact().to_string();
        else
            r["coefficient"] = c.to_complex().real();
        r["coefficient_float"] = c.to_complex().real();
        rows.push_back(std::move(r));
    }
    return rows;
}

Json run_perm(const PermOpts& o, Mode mode) {
    StateFile f = StateFile::load(o.file);
    if (mode == Mode::Float) {
        for (auto& s : f.states) s.spinor = s.spinor.to_float();
        if (f.ket) f.ket = f.ket->to_float();
    }
    Json p;
    p["operation"] = o.op;
    p["source"] = o.file;
    p["spin"] = f.spin.to_string();

    if (o.op == "antisymmetrize" || o.op == "symmetrize") {
        if (f.states.empty()) throw Error(ErrorCode::InvalidArgument, "state file lists no single-particle states");
        Ket k = o.op == "antisymmetrize" ? antisymmetrize(f.spinors()) : symmetrize(f.spinors());
        p["ket"] = ket_json(k, mode, default_namer(k));
        p["classification"] = classification_json(classify_ket(k));
        return p;
    }

    std::optional<PermutationExpansion> expansion;
    if (o.construct != "file") {
        if (f.states.empty()) throw Error(ErrorCode::InvalidArgument, "state file lists no single-particle states");
        if (o.construct == "fermi_dirac") expansion = PermutationExpansion::fermi_dirac(f.states);
        if (o.construct == "bose_einstein") expansion = PermutationExpansion::bose_einstein(f.states);
        if (o.construct == "mixed") expansion = PermutationExpansion::mixed(f.states);
    } else if (!f.coefficients.empty()) {
        expansion = f.expansion();
    } else if (!f.ket) {
        throw Error(ErrorCode::InvalidArgument, "state file has neither coefficients nor a ket block");
    }
    if (expansion && mode == Mode::Float)
        for (auto& c : expansion->coefficients) c = c.to_float();

    Ket k = expansion ? expansion->realize() : *f.ket;
    const LevelNamer namer = expansion ? orbital_namer(expansion->states) : default_namer(k);
    if (expansion) p["expansion"] = expansion_json(*expansion, mode);
    p["ket"] = ket_json(k, mode, namer);

    if (o.op == "classify") {
        p["classification"] = classification_json(expansion ? classify_statistics(*expansion) : classify_ket(k));
    } else {
        Json sig = Json::array();
        for (const auto& [perm, sign] : invariance_signature(k)) {
            Json e;
            e["permutation"] = perm.to_string();
            e["sign"] = sign ? Json(*sign) : Json(nullptr);
            sig.push_back(std::move(e));
        }
        p["signature"] = std::move(sig);
    }
    return p;
}

// ---- cg -------------------------------------------------------------------

struct CgOpts {
    std::string j1;
    std::string j2;
    bool photon = false;
    std::string rescaled;
};

Json basis_json(const ConstituentBasis& b) {
    Json o;
    o["j"] = b.j.to_string();
    o["step"] = b.step;
    Json levels = Json::array();
    for (int i = 0; i < b.dim(); ++i) levels.push_back(b.m_of(i).to_string());
    o["levels"] = std::move(levels);
    return o;
}

std::string ket_name(HalfInt s, HalfInt m) { return "|" + s.to_string() + "," + m.to_string() + ">"; }

Json run_cg(const CgOpts& o, Mode mode) {
    const int chosen = (!o.j1.empty() || !o.j2.empty()) + o.photon + !o.rescaled.empty();
    if (chosen != 1 || o.j1.empty() != o.j2.empty())
        throw UsageError("cg: give --j1 and --j2, or --photon, or --rescaled J");
    CgTable t;
    Json p;
    if (o.photon) {
        t = rescaled_ladder_table(ConstituentBasis::photon());
        p["table"] = "photon";
    } else if (!o.rescaled.empty()) {
        t = rescaled_ladder_table(ConstituentBasis::standard(parse_half("--rescaled", o.rescaled)));
        p["table"] = "rescaled";
    } else {
        t = cg_decompose(parse_half("--j1", o.j1), parse_half("--j2", o.j2));
        p["table"] = "standard";
    }
    p["basis1"] = basis_json(t.basis1);
    p["basis2"] = basis_json(t.basis2);

    Json rows = Json::array();
    for (const auto& row : t.rows) {
        Json r;
        r["s"] = row.s.to_string();
        r["m"] = row.m.to_string();
        Json terms = Json::array();
        for (const auto& [label, value] : row.expansion.amplitudes()) {
            Json e;
            e["m1"] = t.basis1.m_of(label[0]).to_string();
            e["m2"] = t.basis2.m_of(label[1]).to_string();
            put_scalar(e, "coefficient", value.exact(), mode);
            put_rational(e, "probability", value.exact().squared(), mode);
            terms.push_back(std::move(e));
        }
        r["terms"] = std::move(terms);
        rows.push_back(std::move(r));
    }
    p["rows"] = std::move(rows);

    // S-|s,m> against the next row of the same block.
    Json lowering = Json::array();
    const HalfInt step = HalfInt(t.basis1.step);
    for (const auto& row : t.rows) {
        const CoupledState* next = t.find(row.s, row.m - step);
        if (!next) continue;
        CoupledState lowered = ladder_apply(LadderDirection::Lower, row, t.basis1, t.basis2);
        const auto& [label, ref] = *next->expansion.amplitudes().begin();
        const Scalar got = lowered.expansion.amplitude(label);
        Json e;
        e["from"] = ket_name(row.s, row.m);
        e["to"] = ket_name(next->s, next->m);
        if (got.is_zero()) {
            put_scalar(e, "factor", ExactScalar(0), mode);
            e["exact_match"] = lowered.expansion.is_zero();
        } else {
            const ExactScalar factor = got.exact() / ref.exact();
            put_scalar(e, "factor", factor, mode);
            e["exact_match"] = lowered.expansion == next->expansion.scaled(Scalar(factor));
        }
        lowering.push_back(std::move(e));
    }
    p["lowering"] = std::move(lowering);
    return p;
}

// ---- algebra --------------------------------------------------------------

struct AlgebraOpts {
    int n = 1;
    std::string j = "1/2";
    bool matrices = false;
};

Json run_algebra(const AlgebraOpts& o, Mode mode) {
    const HalfInt j = parse_half("--j", o.j);
    RescaledAlgebraCheck r = verify_rescaled_algebra(o.n, j);
    Json p;
    p["n"] = r.n;
    p["j"] = r.j.to_string();
    p["max_residual"] = r.max_residual;
    p["residual_exactly_zero"] = r.residual_exactly_zero;
    p["ladder_identity"] = r.ladder_identity;
    put_rational(p, "ladder_factor", r.ladder_factor, mode);
    if (o.matrices) {
        AngularMomentumSet l = angular_momentum_matrices(j);
        Json m;
        m["lx"] = l.lx.to_string();
        m["ly"] = l.ly.to_string();
        m["lz"] = l.lz.to_string();
        m["lplus"] = l.lplus.to_string();
        m["lminus"] = l.lminus.to_string();
        m["casimir"] = l.casimir().to_string();
        p["matrices"] = std::move(m);
    }
    return p;
}

// ---- condprob -------------------------------------------------------------

struct CondOpts {
    std::string prior = "1/3,1/3,1/3";
    std::string prior2;
    std::string total = "0";
    bool compare_cg = false;
    std::string block;
};

SpinDistribution distribution_from(const std::string& flag, const std::string& text) {
    auto probs = parse_rationals(flag, text);
    if (probs.empty()) throw UsageError(flag + ": empty distribution");
    const HalfInt j = HalfInt::from_twice(static_cast<int>(probs.size()) - 1);
    return SpinDistribution(j, std::move(probs));
}

Json distribution_json(const SpinDistribution& d, Mode mode) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < d.probs().size(); ++i) {
        Json r;
        r["m"] = (d.j() - HalfInt::from_twice(2 * static_cast<int>(i))).to_string();
        put_rational(r, "p", d.probs()[i], mode);
        rows.push_back(std::move(r));
    }
    return rows;
}

Json run_condprob(const CondOpts& o, Mode mode) {
    const SpinDistribution d1 = distribution_from("--prior", o.prior);
    const SpinDistribution d2 = o.prior2.empty() ? d1 : distribution_from("--prior2", o.prior2);
    const HalfInt total = parse_half("--total", o.total);
    if (o.compare_cg && !o.prior2.empty()) throw UsageError("--compare-cg uses two copies of --prior; drop --prior2");
    if (!o.block.empty() && !o.compare_cg) throw UsageError("--block needs --compare-cg");

    Json p;
    p["prior"] = distribution_json(d1, mode);
    p["prior2"] = distribution_json(d2, mode);
    p["total"] = total.to_string();
    ConditionalTable t = conditional_given_total(d1, d2, total);
    Json cells = Json::array();
    for (const auto& c : t.cells) {
        Json r;
        r["m1"] = c.m1.to_string();
        r["m2"] = c.m2.to_string();
        put_rational(r, "p", c.p, mode);
        cells.push_back(std::move(r));
    }
    p["cells"] = std::move(cells);

    if (o.compare_cg) {
        std::optional<HalfInt> block;
        if (!o.block.empty()) block = parse_half("--block", o.block);
        CgComparison cmp = compare_with_cg(d1, total, block);
        Json c;
        c["block"] = cmp.block.to_string();
        Json rows = Json::array();
        for (const auto& cell : cmp.cells) {
            Json r;
            r["m1"] = cell.m1.to_string();
            r["m2"] = cell.m2.to_string();
            put_rational(r, "conditional", cell.conditional, mode);
            put_rational(r, "cg_squared", cell.cg_squared, mode);
            put_rational(r, "deviation", cell.deviation, mode);
            rows.push_back(std::move(r));
        }
        c["cells"] = std::move(rows);
        put_rational(c, "max_deviation", cmp.max_deviation, mode);
        p["comparison"] = std::move(c);
    }
    return p;
}

// ---- beam -----------------------------------------------------------------

struct BeamOpts {
    std::uint64_t atoms = 1000;
    std::string hypothesis = "binomial";
    std::string null_hypothesis = "uniform";
    unsigned threads = 0;
    double critical = kChiSquareCritical2Df5Pct;
};

Json run_beam(const BeamOpts& o, Mode mode, std::uint64_t seed) {
    BeamConfig cfg;
    cfg.atoms = o.atoms;
    cfg.hypothesis = parse_hypothesis(o.hypothesis);
    cfg.seed = seed;
    cfg.threads = o.threads;
    BeamResult r = simulate_beam(cfg);

    Json p;
    p["atoms"] = r.atoms;
    p["hypothesis"] = hypothesis_name(r.hypothesis);
    p["seed"] = r.seed;
    static constexpr const char* kCells[3] = {"+1", "0", "-1"};
    Json cells = Json::array();
    for (std::size_t k = 0; k < 3; ++k) {
        Json c;
        c["m"] = kCells[k];
        c["count"] = r.counts[k];
        const auto as_i64 = [](std::uint64_t v) { return static_cast<std::int64_t>(v); };
        if (r.atoms > 0 && r.atoms <= static_cast<std::uint64_t>(INT64_MAX))
            put_rational(c, "proportion", Rational(as_i64(r.counts[k]), as_i64(r.atoms)), mode);
        else
            put_prob(c, "proportion", Probability::approx(r.proportions[k]), mode);
        cells.push_back(std::move(c));
    }
    p["cells"] = std::move(cells);

    if (o.null_hypothesis != "none") {
        ChiSquareResult x = chi_square_discriminate(r, parse_hypothesis(o.null_hypothesis), o.critical);
        Json c;
        c["null"] = hypothesis_name(x.null_hypothesis);
        c["statistic"] = x.statistic;
        c["degrees_of_freedom"] = x.degrees_of_freedom;
        c["critical_value"] = x.critical_value;
        c["reject"] = x.reject;
        c["expected"] = x.expected;
        p["chi_square"] = std::move(c);
    } else {
        p["chi_square"] = nullptr;
    }
    return p;
}

// ---- output ---------------------------------------------------------------

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

void flatten(const Json& j, const std::string& path, std::ostream& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
    } else if (j.is_array()) {
        if (j.empty()) out << csv_field(path) << ",\n";
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
    } else if (j.is_string()) {
        out << csv_field(path) << "," << csv_field(j.get<std::string>()) << "\n";
    } else if (j.is_null()) {
        out << csv_field(path) << ",\n";
    } else {
        out << csv_field(path) << "," << j.dump() << "\n";
    }
}

void emit(const Json& envelope, const std::string& format, std::ostream& out) {
    if (format == "csv") {
        out << "key,value\n";
        flatten(envelope, "", out);
    } else {
        out << envelope.dump(2) << "\n";
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact spin-correlation and permutation-statistics toolkit", "spinstat"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kSchemaVersion);

    Common common;
    StateOpts state;
    BellOpts bell;
    WignerOpts wigner;
    PermOpts perm;
    CgOpts cg;
    AlgebraOpts algebra;
    CondOpts cond;
    BeamOpts beam;

    auto* s = app.add_subcommand("state", "Build a two-particle state and test invariance or ISC");
    s->add_option("name", state.name, "singlet | improper_singlet | excluded_combination | triplet(m) | spin_j_singlet(j)");
    s->add_option("--file", state.file, "State file with a ket block");
    s->add_option("--c", state.c, "Rotation rate c (1/2 for spin, 1 for photons)")->capture_default_str();
    s->add_option("--grid", state.grid, "Number of grid angles")->check(CLI::Range(1, 100000))->capture_default_str();
    s->add_flag("--check-invariance", state.check_invariance, "Test rotational invariance");
    s->add_flag("--check-isc", state.check_isc, "Test isotropic spin correlation");
    s->add_flag("--decompose", state.decompose, "Split spin_j_singlet(j) into its symmetric and antisymmetric pairs");
    s->add_option("--conjugate-slot", state.conjugate_slot, "Apply |+> -> |->, |-> -> -|+> to this slot (0-based)")
        ->check(CLI::NonNegativeNumber);
    add_common(s, common);

    auto* b = app.add_subcommand("bell", "Evaluate the three-direction inequality or search a grid");
    b->add_option("--gaps", bell.gaps, "theta_ij,theta_jk,theta_ki, e.g. pi/3,pi/3,2pi/3");
    b->add_flag("--search", bell.search, "Search directions 2*pi*k/divisions");
    b->add_option("--divisions", bell.divisions, "Grid size for --search")->check(CLI::Range(1, 120))->capture_default_str();
    b->add_option("--rate", bell.rate, "half: sin^2(theta/2) law, full: sin^2(theta) law")
        ->check(CLI::IsMember({"half", "full"}))
        ->capture_default_str();
    add_common(b, common);

    auto* w = app.add_subcommand("wigner", "Event-inclusion argument for three directions");
    w->add_option("--angles", wigner.angles, "theta_i,theta_j,theta_k")->capture_default_str();
    w->add_option("--variant", wigner.variant, "same_state | singlet_inclusive")
        ->check(CLI::IsMember({"same_state", "singlet_inclusive"}))
        ->capture_default_str();
    w->add_option("--c", wigner.c, "Rotation rate")->capture_default_str();
    add_common(w, common);

    auto* p = app.add_subcommand("perm", "Antisymmetrize, symmetrize or classify states from a state file");
    p->add_option("op", perm.op, "antisymmetrize | symmetrize | classify | signature")
        ->required()
        ->check(CLI::IsMember({"antisymmetrize", "symmetrize", "classify", "signature"}));
    p->add_option("--file", perm.file, "State file")->required();
    p->add_option("--construct", perm.construct, "file | fermi_dirac | bose_einstein | mixed")
        ->check(CLI::IsMember({"file", "fermi_dirac", "bose_einstein", "mixed"}))
        ->capture_default_str();
    add_common(p, common);

    auto* c = app.add_subcommand("cg", "Clebsch-Gordan and rescaled-ladder tables");
    c->add_option("--j1", cg.j1, "First spin");
    c->add_option("--j2", cg.j2, "Second spin");
    c->add_flag("--photon", cg.photon, "Two photons in the {+1,-1} basis with the step-2 ladder");
    c->add_option("--rescaled", cg.rescaled, "Two identical spin-J constituents via the ladder construction");
    add_common(c, common);

    auto* a = app.add_subcommand("algebra", "Commutator residuals of the rescaled angular momentum");
    a->add_option("--n", algebra.n, "Scale factor n in S = n L")->check(CLI::Range(1, 64))->capture_default_str();
    a->add_option("--j", algebra.j, "Spin j")->capture_default_str();
    a->add_flag("--matrices", algebra.matrices, "Print L_x, L_y, L_z, L_+, L_- and the Casimir");
    add_common(a, common);

    auto* q = app.add_subcommand("condprob", "Conditional law of two independent spins given their total");
    q->add_option("--prior", cond.prior, "P(m = j), P(m = j-1), ..., P(m = -j)")->capture_default_str();
    q->add_option("--prior2", cond.prior2, "Second spin's law (default: same as --prior)");
    q->add_option("--total", cond.total, "Conditioning total M1 + M2")->capture_default_str();
    q->add_flag("--compare-cg", cond.compare_cg, "Compare with squared Clebsch-Gordan coefficients");
    q->add_option("--block", cond.block, "Coupled spin s used by --compare-cg (default 2j)");
    add_common(q, common);

    auto* m = app.add_subcommand("beam", "Simulate a deuteron beam and run the chi-square test");
    m->add_option("--atoms", beam.atoms, "Number of atoms")->capture_default_str();
    m->add_option("--hypothesis", beam.hypothesis, "Generating law: uniform | binomial")
        ->check(CLI::IsMember({"uniform", "binomial"}))
        ->capture_default_str();
    m->add_option("--null", beam.null_hypothesis, "Null law for the test: uniform | binomial | none")
        ->check(CLI::IsMember({"uniform", "binomial", "none"}))
        ->capture_default_str();
    m->add_option("--threads", beam.threads, "Worker threads (0: hardware concurrency)")->capture_default_str();
    m->add_option("--critical", beam.critical, "Chi-square critical value")->capture_default_str();
    add_common(m, common);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kSchemaVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    const Mode mode = common.arithmetic();
    Json envelope;
    envelope["schema_version"] = kSchemaVersion;
    envelope["command"] = {{"name", name}, {"argv", args}};
    envelope["mode"] = common.mode;
    envelope["seed"] = common.seed;
    try {
        Json payload;
        if (name == "state") payload = run_state(state, mode);
        if (name == "bell") payload = run_bell(bell, mode);
        if (name == "wigner") payload = run_wigner(wigner, mode);
        if (name == "perm") payload = run_perm(perm, mode);
        if (name == "cg") payload = run_cg(cg, mode);
        if (name == "algebra") payload = run_algebra(algebra, mode);
        if (name == "condprob") payload = run_condprob(cond, mode);
        if (name == "beam") payload = run_beam(beam, mode, common.seed);
        envelope["payload"] = std::move(payload);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        envelope["error"] = {{"code", std::string(e.code_name())}, {"message", e.what()}};
        emit(envelope, common.format, out);
        return kExitDomain;
    }
    emit(envelope, common.format, out);
    return kExitOk;
}

}  // namespace spinstat::cli
