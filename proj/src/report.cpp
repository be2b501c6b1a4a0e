// =============================================================================
// report.cpp
// =============================================================================
#include "hc/report.hpp"

#include <json.hpp>

#include "hc/evaluation.hpp"
#include "hc/print.hpp"

namespace hc {
namespace {

using nlohmann::json;

const char* kind_name(SearchOutcome::Kind k) {
    switch (k) {
        case SearchOutcome::Kind::Witness: return "witness";
        case SearchOutcome::Kind::Inconsistent: return "inconsistent";
        default: return "budget_exhausted";
    }
}

const char* verdict_name(UniversalCheck::Verdict v) {
    switch (v) {
        case UniversalCheck::Verdict::Proved: return "proved";
        case UniversalCheck::Verdict::Refuted: return "refuted";
        default: return "unknown";
    }
}

std::string head_symbol(const FunctionTable& t) {
    switch (t.kind) {
        case TermKind::Zero: return "0";
        case TermKind::Succ: return "S";
        case TermKind::Add: return "+";
        case TermKind::Mul: return "*";
        case TermKind::Skolem: return "$" + std::to_string(t.symbol);
        default: return "?";
    }
}

json outcome_json(const Arena& a, const SearchOutcome& o) {
    json j;
    j["kind"] = kind_name(o.kind);
    if (o.witness) j["witness"] = evaluation_text(a, o.witness->sequence());
    if (o.certificate) {
        const InconsistencyCertificate& c = *o.certificate;
        json cj;
        cj["method"] = c.method;
        cj["core"] = c.core;
        json fs = json::array();
        for (FormulaId f : c.core_formulas) fs.push_back(formula_text(a, f));
        cj["core_formulas"] = fs;
        json ts = json::array();
        for (TermId t : c.core_terms) ts.push_back(term_text(a, t));
        cj["core_terms"] = ts;
        cj["lambda_provenance"] = c.lambda_provenance;
        cj["lambda_size"] = c.lambda_size;
        cj["available_instances"] = c.instances.size();
        j["certificate"] = cj;
    }
    j["stats"] = {{"nodes", o.stats.nodes},
                  {"leaves", o.stats.leaves},
                  {"instances", o.stats.instance_count},
                  {"level", o.stats.level}};
    return j;
}

std::string outcome_text(const Arena& a, const SearchOutcome& o) {
    std::string s = "outcome: ";
    s += kind_name(o.kind);
    s += '\n';
    if (o.witness) {
        s += "witness: " + evaluation_text(a, o.witness->sequence()) + '\n';
    }
    if (o.certificate) {
        const InconsistencyCertificate& c = *o.certificate;
        s += "certificate: method=" + c.method + " core=[";
        for (std::size_t i = 0; i < c.core.size(); ++i) {
            if (i) s += ", ";
            s += std::to_string(c.core[i]);
        }
        s += "]\n";
        for (std::size_t i = 0; i < c.core_formulas.size(); ++i)
            s += "core formula " + std::to_string(c.core[i]) + ": " +
                 formula_text(a, c.core_formulas[i]) + '\n';
        s += "core terms:";
        for (TermId t : c.core_terms) s += ' ' + term_text(a, t);
        s += '\n';
        s += "lambda: " + c.lambda_provenance + " (" +
             std::to_string(c.lambda_size) + " terms, " +
             std::to_string(c.instances.size()) + " instances)\n";
    }
    s += "stats: nodes=" + std::to_string(o.stats.nodes) +
         " leaves=" + std::to_string(o.stats.leaves) +
         " instances=" + std::to_string(o.stats.instance_count) +
         " level=" + std::to_string(o.stats.level) + '\n';
    return s;
}

json registry_json(const Arena& a, const SkolemRegistry& reg) {
    json entries = json::array();
    for (const SkolemEntry& e : reg.entries()) {
        json ej;
        ej["symbol"] = "$" + std::to_string(e.symbol);
        ej["arity"] = e.arity;
        ej["key"] = formula_text(a, e.key);
        ej["for"] = formula_text(a, e.display);
        ej["body_code"] = e.body_code.get_str();
        entries.push_back(ej);
    }
    return entries;
}

std::string registry_text(const Arena& a, const SkolemRegistry& reg) {
    std::string s;
    for (const SkolemEntry& e : reg.entries()) {
        s += "$" + std::to_string(e.symbol) + "/" + std::to_string(e.arity) +
             ": for " + formula_text(a, e.display) + '\n';
    }
    return s;
}

}  // namespace

std::string render_outcome(const Arena& a, const SearchOutcome& o,
                           Format fmt) {
    if (fmt == Format::Json) return outcome_json(a, o).dump(2) + "\n";
    return outcome_text(a, o);
}

std::string render_refutation(const Arena& a, const RefutationResult& r,
                              Format fmt) {
    bool refuted = r.outcome.kind == SearchOutcome::Kind::Inconsistent;
    if (fmt == Format::Json) {
        json j;
        j["refuted"] = refuted;
        j["levels_tried"] = r.levels_tried;
        j["lambda_sizes"] = r.lambda_sizes;
        j["outcome"] = outcome_json(a, r.outcome);
        return j.dump(2) + "\n";
    }
    std::string s = refuted ? "refuted: yes" : "refuted: no";
    s += " (levels tried: " + std::to_string(r.levels_tried) + ", sizes:";
    for (std::size_t z : r.lambda_sizes) s += ' ' + std::to_string(z);
    s += ")\n";
    if (refuted)
        s += "refuting level: " + std::to_string(r.outcome.stats.level) + '\n';
    return s + outcome_text(a, r.outcome);
}

std::string render_universal(const Arena& a, const UniversalCheck& u,
                             Format fmt) {
    if (fmt == Format::Json) {
        json j;
        j["verdict"] = verdict_name(u.verdict);
        j["outcome"] = outcome_json(a, u.outcome);
        return j.dump(2) + "\n";
    }
    std::string s = "verdict: ";
    s += verdict_name(u.verdict);
    s += '\n';
    return s + outcome_text(a, u.outcome);
}

std::string render_model(const Arena& a, const FiniteHerbrandModel& m,
                         Format fmt) {
    if (fmt == Format::Json) {
        json j;
        json classes = json::array();
        for (const auto& block : m.universe) {
            json b = json::array();
            for (TermId t : block) b.push_back(term_text(a, t));
            classes.push_back(b);
        }
        j["classes"] = classes;
        json tables = json::array();
        for (const FunctionTable& t : m.tables) {
            json tj;
            tj["symbol"] = head_symbol(t);
            json entries = json::array();
            for (const auto& [args, value] : t.entries)
                entries.push_back({{"args", args}, {"value", value}});
            tj["entries"] = entries;
            tables.push_back(tj);
        }
        j["tables"] = tables;
        return j.dump(2) + "\n";
    }
    std::string s = "classes: " + std::to_string(m.classes()) + '\n';
    for (std::size_t i = 0; i < m.universe.size(); ++i) {
        s += "class " + std::to_string(i) + ":";
        for (TermId t : m.universe[i]) s += ' ' + term_text(a, t);
        s += '\n';
    }
    for (const FunctionTable& t : m.tables) {
        for (const auto& [args, value] : t.entries) {
            s += "table " + head_symbol(t) + ": (";
            for (std::size_t i = 0; i < args.size(); ++i) {
                if (i) s += ", ";
                s += std::to_string(args[i]);
            }
            s += ") -> " + std::to_string(value) + '\n';
        }
    }
    return s;
}

std::string render_hull(const Arena& a, const TermSet& lambda, Format fmt) {
    if (fmt == Format::Json) {
        json j;
        j["provenance"] = lambda.provenance;
        j["size"] = lambda.size();
        json ts = json::array();
        for (TermId t : lambda.terms) ts.push_back(term_text(a, t));
        j["terms"] = ts;
        return j.dump(2) + "\n";
    }
    std::string s =
        "term set: " + lambda.provenance + " (" +
        std::to_string(lambda.size()) + " terms)\n";
    for (TermId t : lambda.terms) s += term_text(a, t) + '\n';
    return s;
}

std::string render_skolemization(const Arena& a, const SkolemizedFormula& sk,
                                 const SkolemRegistry& reg, Format fmt) {
    if (fmt == Format::Json) {
        json j;
        j["rnnf"] = formula_text(a, sk.rnnf);
        j["with_witnesses"] = formula_text(a, sk.with_s);
        j["open"] = formula_text(a, sk.open);
        json fv = json::array();
        for (VarId v : sk.free_vars) fv.push_back(a.var_name(v));
        j["free_vars"] = fv;
        j["registry"] = registry_json(a, reg);
        return j.dump(2) + "\n";
    }
    std::string s;
    s += "rnnf: " + formula_text(a, sk.rnnf) + '\n';
    s += "with witnesses: " + formula_text(a, sk.with_s) + '\n';
    s += "open: " + formula_text(a, sk.open) + '\n';
    s += "free:";
    for (VarId v : sk.free_vars) s += ' ' + a.var_name(v);
    s += '\n';
    return s + registry_text(a, reg);
}

std::string render_theory(const Arena& a, const Theory& t,
                          const SkolemRegistry& reg, Format fmt) {
    if (fmt == Format::Json) {
        json j;
        j["name"] = t.name;
        json axioms = json::array();
        for (const TheoryAxiom& ax : t.axioms) {
            json aj;
            aj["source"] = formula_text(a, ax.source);
            aj["rnnf"] = formula_text(a, ax.sk.rnnf);
            aj["with_witnesses"] = formula_text(a, ax.sk.with_s);
            aj["open"] = formula_text(a, ax.sk.open);
            axioms.push_back(aj);
        }
        j["axioms"] = axioms;
        j["registry"] = registry_json(a, reg);
        return j.dump(2) + "\n";
    }
    std::string s = "theory: " + t.name + '\n';
    for (std::size_t i = 0; i < t.axioms.size(); ++i) {
        const TheoryAxiom& ax = t.axioms[i];
        s += "axiom " + std::to_string(i) + ": " +
             formula_text(a, ax.source) + '\n';
        s += "  rnnf: " + formula_text(a, ax.sk.rnnf) + '\n';
        s += "  with witnesses: " + formula_text(a, ax.sk.with_s) + '\n';
        s += "  open: " + formula_text(a, ax.sk.open) + '\n';
    }
    return s + registry_text(a, reg);
}

}  // namespace hc
