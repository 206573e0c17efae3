#include "vopt/report_json.hpp"

namespace vopt {

Json jnum(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

Json to_json(const Vec& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(jnum(v[i]));
    return a;
}

Json to_json(const IVec& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

const char* to_string(SectionVerdict v) {
    switch (v) {
        case SectionVerdict::bounded_likely: return "bounded_likely";
        case SectionVerdict::unbounded_witness: return "unbounded_witness";
        case SectionVerdict::empty_section: return "empty_section";
        case SectionVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

const char* to_string(PropernessVerdict v) {
    switch (v) {
        case PropernessVerdict::not_proper_witness: return "not_proper_witness";
        case PropernessVerdict::no_witness_found: return "no_witness_found";
        case PropernessVerdict::empty_section: return "empty_section";
    }
    return "?";
}

const char* to_string(KhovanskiiStatus v) {
    switch (v) {
        case KhovanskiiStatus::nondegenerate_probabilistic: return "nondegenerate_probabilistic";
        case KhovanskiiStatus::degenerate_witness: return "degenerate_witness";
        case KhovanskiiStatus::no_zero_found: return "no_zero_found";
    }
    return "?";
}

const char* to_string(ParetoKind v) {
    switch (v) {
        case ParetoKind::pareto_verified_local: return "pareto_verified_local";
        case ParetoKind::weak_only: return "weak_only";
        case ParetoKind::unverified: return "unverified";
    }
    return "?";
}

const char* to_string(ExistenceVerdict v) {
    switch (v) {
        case ExistenceVerdict::exists_with_witness: return "exists_with_witness";
        case ExistenceVerdict::certificate_plus_bounded_section:
            return "certificate_plus_bounded_section";
        case ExistenceVerdict::no_conclusion: return "no_conclusion";
    }
    return "?";
}

Json to_json(const RabierResult& r) {
    return Json{{"value", jnum(r.value)},
                {"weights", to_json(r.weights)},
                {"orthant", to_json(r.orthant)},
                {"budget_exceeded", r.budget_exceeded}};
}

Json to_json(const TangencySample& s) {
    return Json{{"x", to_json(s.x)},          {"radius", jnum(s.radius)},
                {"fvalue", to_json(s.fvalue)}, {"dependency", jnum(s.dependency)},
                {"nu", jnum(s.nu)},            {"nu_scaled", jnum(s.nu_scaled)},
                {"weight", to_json(s.weight)}};
}

Json to_json(const TangencyTrace& t) {
    Json samples = Json::array();
    for (const auto& s : t.samples) samples.push_back(to_json(s));
    Json j{{"samples", samples},
           {"status", t.status == TraceStatus::converged ? "converged" : "lost_track"},
           {"tangency_witness", t.tangency_witness},
           {"ps_witness", t.ps_witness},
           {"weak_ps_witness", t.weak_ps_witness},
           {"sublevel_ok", t.sublevel_ok}};
    j["limit_estimate"] = t.limit_estimate ? to_json(*t.limit_estimate) : Json(nullptr);
    return j;
}

Json to_json(const ValueCluster& c) {
    Json j{{"center", to_json(c.center)}, {"count", c.count}};
    j["representative_x"] =
        c.representative_x.size() > 0 ? to_json(c.representative_x) : Json(nullptr);
    return j;
}

Json to_json(const TangencyEstimate& e) {
    Json clusters = Json::array();
    for (const auto& c : e.clusters) clusters.push_back(to_json(c));
    Json j{{"clusters", clusters},
           {"traces_total", e.traces_total},
           {"traces_with_limit", e.traces_with_limit}};
    j["sublevel"] = e.config.sublevel ? to_json(*e.config.sublevel) : Json(nullptr);
    return j;
}

Json to_json(const EscapeWitness& w) {
    Json xs = Json::array(), fv = Json::array();
    for (const auto& x : w.xs) xs.push_back(to_json(x));
    for (const auto& v : w.fvalues) fv.push_back(to_json(v));
    return Json{{"xs", xs}, {"fvalues", fv}};
}

Json to_json(const SectionProbeReport& r) {
    Json j{{"tbar", to_json(r.tbar)},
           {"verdict", to_string(r.verdict)},
           {"feasible_points", r.feasible_points},
           {"envelope_is_global_bound", r.envelope_is_global_bound},
           {"seed", r.seed}};
    j["lower_envelope"] = r.lower_envelope.size() > 0 ? to_json(r.lower_envelope) : Json(nullptr);
    j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
    return j;
}

Json to_json(const PropernessProbeReport& r) {
    Json targets = Json::array();
    for (const auto& t : r.targets_tried) targets.push_back(to_json(t));
    Json j{{"tbar", to_json(r.tbar)},
           {"verdict", to_string(r.verdict)},
           {"targets_tried", targets},
           {"seed", r.seed}};
    j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
    j["witness_limit"] = r.witness_limit.size() > 0 ? to_json(r.witness_limit) : Json(nullptr);
    return j;
}

Json to_json(const PsProbeReport& r) {
    Json recs = Json::array();
    for (const auto& rec : r.records)
        recs.push_back(Json{{"radius", jnum(rec.radius)},
                            {"nu", jnum(rec.nu)},
                            {"violation", jnum(rec.violation)},
                            {"fvalue", to_json(rec.fvalue)}});
    return Json{{"tbar", to_json(r.tbar)},
                {"witness_found", r.witness_found},
                {"min_feasible_nu", jnum(r.min_feasible_nu)},
                {"records", recs},
                {"seed", r.seed}};
}

Json to_json(const LatticePolytope& p) {
    Json verts = Json::array();
    for (const auto& v : p.vertices) verts.push_back(to_json(v));
    return Json{{"dim", p.dim}, {"vertices", verts}};
}

Json to_json(const FaceAtInfinity& f) {
    Json normal = Json::array();
    for (Eigen::Index i = 0; i < f.normal.size(); ++i)
        normal.push_back(Json{{"num", f.normal[i]}, {"den", 1}});
    Json verts = Json::array();
    for (const auto& v : f.vertex_subset) verts.push_back(to_json(v));
    Json decomp = Json::array();
    for (const auto& part : f.decomposition) {
        Json pj = Json::array();
        for (const auto& v : part) pj.push_back(to_json(v));
        decomp.push_back(pj);
    }
    return Json{{"normal", normal},
                {"support", f.support},
                {"dim", f.dim},
                {"vertex_subset", verts},
                {"decomposition", decomp}};
}

Json to_json(const NewtonComplex& c) {
    Json comps = Json::array();
    for (const auto& p : c.component_polytopes) comps.push_back(to_json(p));
    Json faces = Json::array();
    for (const auto& f : c.faces) faces.push_back(to_json(f));
    return Json{{"component_polytopes", comps},
                {"minkowski_sum", to_json(c.minkowski_sum)},
                {"faces_at_infinity", faces}};
}

Json to_json(const ConvenienceReport& r) {
    Json per = Json::array();
    for (bool b : r.per_component) per.push_back(b);
    return Json{{"per_component", per}, {"overall", r.overall}};
}

Json to_json(const KhovanskiiResult& r) {
    Json faces = Json::array();
    for (const auto& fr : r.faces) {
        Json j{{"face_index", fr.face_index},
               {"status", to_string(fr.status)},
               {"zeros_found", fr.zeros_found}};
        j["witness"] = fr.witness ? to_json(*fr.witness) : Json(nullptr);
        j["witness_residual"] = jnum(fr.witness_residual);
        j["witness_sigma_min"] = jnum(fr.witness_sigma_min);
        faces.push_back(std::move(j));
    }
    return Json{{"faces", faces},
                {"overall", to_string(r.overall)},
                {"budget", Json{{"n_starts", r.budget.n_starts},
                                {"root_tol_rel", r.budget.root_tol_rel},
                                {"rank_tol_rel", r.budget.rank_tol_rel},
                                {"torus_floor", r.budget.torus_floor},
                                {"seed", r.budget.seed}}}};
}

Json to_json(const CriticalValueResult& r) {
    Json clusters = Json::array();
    for (const auto& c : r.clusters) clusters.push_back(to_json(c));
    return Json{{"clusters", clusters}, {"degenerate_dimension", r.degenerate_dimension}};
}

Json to_json(const ParetoPoint& p) {
    return Json{{"x", to_json(p.x)},
                {"value", to_json(p.value)},
                {"kind", to_string(p.kind)},
                {"weight", to_json(p.weight)}};
}

Json to_json(const ParetoSearchResult& r) {
    Json pts = Json::array();
    for (const auto& p : r.points) pts.push_back(to_json(p));
    Json j{{"points", pts},
           {"observed_infimum_scalarized", jnum(r.observed_infimum_scalarized)}};
    j["observed_floor"] = r.observed_floor.size() > 0 ? to_json(r.observed_floor) : Json(nullptr);
    return j;
}

Json to_json(const CandidateValueSet& s) {
    Json crit = Json::array(), tang = Json::array(), flags = Json::array();
    for (const auto& c : s.critical_values) crit.push_back(to_json(c));
    for (const auto& c : s.tangency_values) tang.push_back(to_json(c));
    for (char f : s.nondominated) flags.push_back(static_cast<bool>(f));
    return Json{{"critical_values", crit},
                {"tangency_values", tang},
                {"nondominated", flags},
                {"degenerate_dimension", s.degenerate_dimension}};
}

Json to_json(const ExistenceReport& r) {
    Json basis = Json::array();
    basis.push_back(Json{{"kind", "section_probe"},
                         {"verdict", to_string(r.section.verdict)},
                         {"data", to_json(r.section)}});
    basis.push_back(Json{{"kind", "properness_probe"},
                         {"verdict", to_string(r.properness.verdict)},
                         {"data", to_json(r.properness)}});
    basis.push_back(Json{{"kind", "ps_probe"},
                         {"verdict", r.ps.witness_found ? "witness_found" : "clean"},
                         {"data", to_json(r.ps)}});
    basis.push_back(Json{{"kind", "tangency_sublevel"},
                         {"verdict", r.tangency_sublevel.clusters.empty() ? "empty" : "nonempty"},
                         {"data", to_json(r.tangency_sublevel)}});
    if (r.convenience)
        basis.push_back(Json{{"kind", "newton_convenience"},
                             {"verdict", r.convenience->overall ? "convenient" : "not_convenient"},
                             {"data", to_json(*r.convenience)}});
    if (r.khovanskii)
        basis.push_back(Json{{"kind", "newton_khovanskii"},
                             {"verdict", to_string(r.khovanskii->overall)},
                             {"data", to_json(*r.khovanskii)}});
    {
        Json pts = Json::array();
        for (const auto& p : r.pareto_points) pts.push_back(to_json(p));
        basis.push_back(Json{{"kind", "pareto_search"},
                             {"verdict", r.witness ? "witness_found" : "no_witness"},
                             {"data", Json{{"points", pts}}}});
    }
    Json j{{"tbar", to_json(r.tbar)},
           {"verdict", to_string(r.verdict)},
           {"theorem_path", r.theorem_path},
           {"basis", basis},
           {"seed", r.seed}};
    j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
    return j;
}

} // namespace vopt
