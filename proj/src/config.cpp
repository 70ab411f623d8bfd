// SPDX-License-Identifier: Apache-2.0

#include "molab/config.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace molab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
    throw std::runtime_error("config error: " + what);
}

FieldRegularity parse_regularity(const json& j, FieldRegularity fallback) {
    if (!j.is_object()) return fallback;
    FieldRegularity reg;
    const std::string type = j.value("type", "constant");
    if (type == "constant") {
        reg.kind = FieldRegularity::Kind::constant;
    } else if (type == "lipschitz") {
        reg.kind = FieldRegularity::Kind::lipschitz;
        reg.constant = j.value("L", 1.0);
    } else if (type == "holder") {
        reg.kind = FieldRegularity::Kind::holder;
        reg.constant = j.value("C", 1.0);
        reg.alpha = j.value("alpha", 1.0);
    } else if (type == "log_holder") {
        reg.kind = FieldRegularity::Kind::log_holder;
        reg.constant = j.value("c", 1.0);
    } else {
        fail("unknown regularity type '" + type + "'");
    }
    return reg;
}

// Scalar fields over the box; bounds and default regularity follow the
// closed form of each kind.
ScalarField parse_field(const json& j, const Box& box) {
    if (j.is_number()) return ScalarField::constant(j.get<double>());
    if (!j.is_object()) fail("field descriptor must be a number or an object");
    const std::string kind = j.value("kind", "constant");

    double max_norm = 0.0;
    for (int d = 0; d < box.dim; ++d) {
        const size_t i = static_cast<size_t>(d);
        max_norm += std::max(box.lo[i] * box.lo[i], box.hi[i] * box.hi[i]);
    }
    max_norm = std::sqrt(max_norm);

    if (kind == "constant") {
        return ScalarField::constant(j.value("value", 0.0));
    }
    if (kind == "abs_power") {
        const double coeff = j.value("coeff", 1.0);
        const double expo = j.value("exponent", 0.5);
        if (!(expo > 0.0) || expo > 1.0) fail("abs_power exponent must be in (0,1]");
        ScalarField f;
        f.eval = [coeff, expo](const Point& x) { return coeff * std::pow(x.norm(), expo); };
        FieldRegularity def;
        def.kind = FieldRegularity::Kind::holder;
        def.constant = coeff; // | |x|^a - |y|^a | <= |x-y|^a
        def.alpha = expo;
        f.regularity = parse_regularity(j.value("regularity", json()), def);
        f.inf_bound = 0.0;
        f.sup_bound = coeff * std::pow(max_norm, expo);
        return f;
    }
    if (kind == "affine") {
        const double base = j.value("base", 2.0);
        std::array<double, 2> slope{0.0, 0.0};
        if (j.contains("slope")) {
            const auto& s = j.at("slope");
            for (size_t i = 0; i < s.size() && i < 2; ++i) slope[i] = s[i].get<double>();
        }
        ScalarField f;
        f.eval = [base, slope](const Point& x) {
            return base + slope[0] * x.x[0] + slope[1] * x.x[1];
        };
        const double L = std::sqrt(slope[0] * slope[0] + slope[1] * slope[1]);
        FieldRegularity def;
        def.kind = FieldRegularity::Kind::lipschitz;
        def.constant = L;
        f.regularity = parse_regularity(j.value("regularity", json()), def);
        double lo = base, hi = base;
        for (int d = 0; d < box.dim; ++d) {
            const size_t i = static_cast<size_t>(d);
            lo += std::min(slope[i] * box.lo[i], slope[i] * box.hi[i]);
            hi += std::max(slope[i] * box.lo[i], slope[i] * box.hi[i]);
        }
        f.inf_bound = lo;
        f.sup_bound = hi;
        return f;
    }
    if (kind == "one_plus_square") {
        const double coeff = j.value("coeff", 1.0);
        ScalarField f;
        f.eval = [coeff](const Point& x) {
            const double n = x.norm();
            return coeff * (1.0 + n * n);
        };
        FieldRegularity def;
        def.kind = FieldRegularity::Kind::lipschitz;
        def.constant = coeff * 2.0 * max_norm;
        f.regularity = parse_regularity(j.value("regularity", json()), def);
        f.inf_bound = coeff;
        f.sup_bound = coeff * (1.0 + max_norm * max_norm);
        return f;
    }
    if (kind == "sine") {
        const double base = j.value("base", 2.0);
        const double amp = j.value("amp", 0.25);
        const double freq = j.value("freq", 1.0);
        ScalarField f;
        f.eval = [base, amp, freq](const Point& x) {
            return base + amp * std::sin(freq * (x.x[0] + x.x[1]));
        };
        FieldRegularity def;
        def.kind = FieldRegularity::Kind::lipschitz;
        def.constant = std::abs(amp * freq) * std::sqrt(double(box.dim));
        f.regularity = parse_regularity(j.value("regularity", json()), def);
        f.inf_bound = base - std::abs(amp);
        f.sup_bound = base + std::abs(amp);
        return f;
    }
    fail("unknown field kind '" + kind + "'");
}

PhiPtr parse_family(const json& j, const Box& box, ExperimentConfig& cfg) {
    if (!j.is_object()) fail("family descriptor must be an object");
    const std::string name = j.value("family", "double_phase");
    FamilySpec spec;
    spec.label = j.value("label", name);

    if (name == "double_phase") {
        spec.family = PhiFamily::double_phase;
        spec.p = j.value("p", 2.0);
        spec.q = j.value("q", 2.0);
        if (j.contains("a")) spec.a_field = parse_field(j.at("a"), box);
        cfg.p = spec.p;
        cfg.q = spec.q;
        cfg.a_field = spec.a_field;
        if (spec.a_field &&
            spec.a_field->regularity.kind == FieldRegularity::Kind::holder)
            cfg.alpha = spec.a_field->regularity.alpha;
        else if (spec.a_field &&
                 spec.a_field->regularity.kind == FieldRegularity::Kind::lipschitz)
            cfg.alpha = 1.0;
    } else if (name == "variable_exponent" || name == "vexp_log" ||
               name == "vexp_smoothed") {
        spec.family = name == "variable_exponent" ? PhiFamily::variable_exponent
                      : name == "vexp_log"        ? PhiFamily::vexp_log
                                                  : PhiFamily::vexp_smoothed;
        if (!j.contains("p_field")) fail("variable exponent family needs p_field");
        spec.p_field = parse_field(j.at("p_field"), box);
    } else if (name == "exp_power") {
        spec.family = PhiFamily::exp_power;
        spec.p = j.value("p", 2.0);
        if (j.contains("p_field")) spec.p_field = parse_field(j.at("p_field"), box);
    } else if (name == "power") {
        return make_power(j.value("p", 2.0));
    } else if (name == "weighted_sum") {
        spec.family = PhiFamily::weighted_sum;
        if (!j.contains("terms") || !j.at("terms").is_array() || j.at("terms").empty())
            fail("weighted_sum needs a nonempty terms array");
        for (const auto& t : j.at("terms")) {
            WeightedTerm term;
            term.weight = parse_field(t.at("weight"), box);
            const double tp = t.value("p", 2.0);
            if (!(tp > 1.0)) fail("weighted term exponent must exceed 1");
            term.phi_s = [tp](double s) { return std::pow(s, tp); };
            term.label = "s^" + std::to_string(tp);
            spec.terms.push_back(std::move(term));
        }
    } else {
        fail("unknown family '" + name + "'");
    }
    try {
        return make_family(spec);
    } catch (const std::exception& e) {
        fail(std::string("invalid family parameters: ") + e.what());
    }
}

std::vector<double> parse_schedule(const json& j, const char* what) {
    std::vector<double> out;
    if (j.is_array()) {
        for (const auto& v : j) out.push_back(v.get<double>());
    } else if (j.is_object()) {
        const double start = j.value("start", 0.125);
        const double ratio = j.value("ratio", 0.5);
        const int count = j.value("count", 8);
        double e = start;
        for (int i = 0; i < count; ++i) {
            out.push_back(e);
            e *= ratio;
        }
    } else {
        fail(std::string(what) + " must be an array or {start, ratio, count}");
    }
    for (size_t i = 1; i < out.size(); ++i)
        if (!(out[i] < out[i - 1])) fail(std::string(what) + " must be strictly decreasing");
    return out;
}

Box parse_box(const json& j, int dim) {
    Box box;
    box.dim = dim;
    const auto& lo = j.at("lo");
    const auto& hi = j.at("hi");
    for (int d = 0; d < dim; ++d) {
        box.lo[static_cast<size_t>(d)] = lo[static_cast<size_t>(d)].get<double>();
        box.hi[static_cast<size_t>(d)] = hi[static_cast<size_t>(d)].get<double>();
    }
    return box;
}

} // namespace

ExperimentConfig parse_config(const std::string& json_text, const std::string& base_dir) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }

    ExperimentConfig cfg;
    cfg.seed = j.value("seed", 42u);
    cfg.threads = j.value("threads", 1);
    cfg.eta = j.value("eta", 1e-2);
    if (j.contains("growth_p")) cfg.growth_p = j.at("growth_p").get<double>();

    if (!j.contains("domain")) fail("missing domain");
    const auto& dj = j.at("domain");
    const int dim = dj.value("dim", 1);
    if (dim < 1 || dim > 2) fail("domain dim must be 1 or 2");
    Box box = parse_box(dj, dim);
    std::array<int, 2> res{dj.at("resolution")[0].get<int>(), 1};
    if (dim == 2) {
        res[1] = dj.at("resolution").size() > 1 ? dj.at("resolution")[1].get<int>()
                                                : res[0];
    }
    try {
        cfg.domain = std::make_shared<const GridDomain>(dim, box, res);
    } catch (const std::exception& e) {
        fail(std::string("invalid domain: ") + e.what());
    }

    if (!j.contains("family")) fail("missing family");
    cfg.family = parse_family(j.at("family"), box, cfg);
    cfg.family_label = cfg.family->label();
    if (j.at("family").contains("alpha"))
        cfg.alpha = j.at("family").at("alpha").get<double>();

    if (j.contains("fixture")) {
        const auto& fj = j.at("fixture");
        FixtureSpec fs;
        fs.shape = fj.value("shape", "hat");
        if (fj.contains("center")) {
            const auto& c = fj.at("center");
            fs.center.dim = dim;
            for (int d = 0; d < dim && d < static_cast<int>(c.size()); ++d)
                fs.center.x[static_cast<size_t>(d)] = c[static_cast<size_t>(d)].get<double>();
        } else {
            fs.center.dim = dim;
        }
        fs.width = fj.value("width", 0.5);
        fs.amplitude = fj.value("amplitude", 1.0);
        fs.theta = fj.value("theta", 2.0);
        fs.inner = fj.value("inner", 0.3);
        fs.outer = fj.value("outer", 0.6);
        fs.path = fj.value("path", "");
        if (!fs.path.empty() && !base_dir.empty() && fs.path.front() != '/')
            fs.path = base_dir + "/" + fs.path;
        cfg.fixture = fs;
    }

    if (j.contains("cover")) {
        const auto& cj = j.at("cover");
        CoverConfig cc;
        cc.auto_interval = cj.value("auto_interval", false);
        if (cj.contains("K")) {
            cc.compact_k = parse_box(cj.at("K"), dim);
            cc.has_k = true;
        }
        if (cj.contains("pieces")) {
            for (const auto& pj : cj.at("pieces")) {
                CoverPiece piece;
                piece.outer_set = parse_box(pj.at("outer"), dim);
                piece.inner_set = parse_box(pj.at("inner"), dim);
                if (pj.contains("z")) {
                    const auto& z = pj.at("z");
                    for (int d = 0; d < dim && d < static_cast<int>(z.size()); ++d)
                        piece.z[static_cast<size_t>(d)] = z[static_cast<size_t>(d)].get<double>();
                }
                piece.boundary_piece = pj.value("boundary", piece.z[0] != 0.0 || piece.z[1] != 0.0);
                cc.pieces.push_back(piece);
            }
        }
        cfg.cover = cc;
    }

    cfg.eps_schedule = j.contains("eps_schedule")
                           ? parse_schedule(j.at("eps_schedule"), "eps_schedule")
                           : parse_schedule(nlohmann::json{{"start", 0.125},
                                                           {"ratio", 0.5},
                                                           {"count", 6}},
                                            "eps_schedule");
    if (j.contains("lambda_sweep")) {
        for (const auto& v : j.at("lambda_sweep")) cfg.lambda_sweep.push_back(v.get<double>());
    } else {
        for (int kk = -4; kk <= 8; ++kk) cfg.lambda_sweep.push_back(std::pow(2.0, kk));
    }

    if (j.contains("checks"))
        for (const auto& c : j.at("checks")) cfg.checks.push_back(c.get<std::string>());

    if (j.contains("conjugate") && j.at("conjugate").contains("p_list")) {
        cfg.conjugate_p_list.clear();
        for (const auto& v : j.at("conjugate").at("p_list"))
            cfg.conjugate_p_list.push_back(v.get<double>());
    }
    if (j.contains("norm") && j.at("norm").contains("fixtures"))
        cfg.norm_fixture_count = j.at("norm").at("fixtures").get<int>();

    return cfg;
}

} // namespace molab
