// pcpforge: generate Label Cover games, materialize the three PCP
// reductions, evaluate proofs, run the lemma-check suites, decode, and
// print parameter schedules. All reports are JSON lines.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pcpforge/analysis.hpp"
#include "pcpforge/checks.hpp"
#include "pcpforge/reductions.hpp"
#include "pcpforge/serialization.hpp"

namespace {

using namespace pcpforge;

std::size_t default_cap_states() {
    if (const char* env = std::getenv("PCPFORGE_CAP_STATES")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        throw config_error("PCPFORGE_CAP_STATES must be a positive integer");
    }
    return std::size_t(1) << 20;
}

Rational parse_unit_interval(const std::string& text, const char* flag) {
    Rational r = parse_rational(text);
    if (r <= 0 || r >= 1)
        throw config_error(std::string(flag) + " must lie strictly between 0 and 1: " + text);
    return r;
}

std::string slurp(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw input_error("cannot read input: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw input_error("cannot write output: " + out_path);
    out << text;
}

// Accepts either a bare labelcover.v1 object or a wrapper that carries
// the instance alongside an optional labeling / variant / eps.
struct LoadedInput {
    LabelCoverInstance instance;
    bool has_labeling = false;
    Labeling labeling;
    std::string variant;
    std::string eps;
};

LoadedInput load_input(const std::string& path) {
    Json j = Json::parse(slurp(path));
    LoadedInput in;
    const Json& inst = j.contains("instance") ? j.at("instance") : j;
    in.instance = label_cover_from_json(inst);
    if (j.contains("labeling")) {
        in.labeling = labeling_from_json(j.at("labeling"));
        in.has_labeling = true;
    }
    if (j.contains("variant")) in.variant = j.at("variant").get<std::string>();
    if (j.contains("eps")) in.eps = j.at("eps").get<std::string>();
    return in;
}

ReductionKind parse_variant(const std::string& name) {
    if (name == "hypergraph") return ReductionKind::hypergraph;
    if (name == "e3sat") return ReductionKind::e3sat;
    if (name == "4ss" || name == "fourss") return ReductionKind::fourss;
    throw config_error("unknown variant: " + name);
}

std::vector<Clause3> parse_clauses(const std::string& text) {
    // "1,2,-3;2,-4,5" with 1-based signed variables
    std::vector<Clause3> cnf;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        Clause3 clause;
        std::stringstream cs(item);
        std::string lit;
        int idx = 0;
        while (std::getline(cs, lit, ',')) {
            if (idx >= 3) throw input_error("clause has more than 3 literals: " + item);
            int v = std::stoi(lit);
            if (v == 0) throw input_error("literals are signed 1-based, got 0");
            clause.literals[idx].var = std::abs(v) - 1;
            clause.literals[idx].negated = v < 0;
            ++idx;
        }
        if (idx != 3) throw input_error("clause needs exactly 3 literals: " + item);
        cnf.push_back(clause);
    }
    return cnf;
}

ProofAssignment make_proofs(const LoadedInput& in, const std::string& spec, ReductionKind kind,
                            std::uint64_t seed) {
    if (spec == "longcode") {
        if (!in.has_labeling) throw input_error("--proofs longcode needs a labeling in the input");
        return long_code_proofs(in.instance, in.labeling, kind);
    }
    if (spec == "random") {
        CounterRng rng(seed, /*stream=*/31);
        return random_folded_proofs(in.instance, kind, rng);
    }
    if (spec == "ones") {
        ProofAssignment proofs;
        proofs.folded = false;
        for (int v = 0; v < in.instance.v_count; ++v)
            proofs.right.push_back(BooleanTable::constant(in.instance.m, 1));
        if (kind == ReductionKind::e3sat)
            for (int u = 0; u < in.instance.u_count; ++u)
                proofs.left.push_back(BooleanTable::constant(in.instance.k, 1));
        return proofs;
    }
    return proofs_from_json(Json::parse(slurp(spec)));
}

int run(int argc, char** argv) {
    CLI::App app{"PCP reduction toolkit"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::string eps_text = "1/4", delta_text = "1/4";
    std::string mode = "auto";
    std::int64_t samples = 1000000;
    std::size_t cap_states = default_cap_states();
    std::string in_path, out_path;
    app.add_option("--seed", seed, "root seed for all randomness");
    app.add_option("--eps", eps_text, "epsilon as p/q in (0,1)");
    app.add_option("--delta", delta_text, "delta as p/q in (0,1)");
    app.add_option("--mode", mode)->check(CLI::IsMember({"auto", "exact", "sample"}));
    app.add_option("--samples", samples)->check(CLI::PositiveNumber);
    app.add_option("--cap-states", cap_states)->check(CLI::PositiveNumber);
    app.add_option("--in", in_path, "input path ('-' = stdin)");
    app.add_option("--out", out_path, "output path ('-' = stdout)");

    // gen
    auto* gen = app.add_subcommand("gen", "generate a Label Cover instance");
    std::string gen_mode = "planted";
    int gu = 4, gv = 4, gdeg = 2, gk = 3, gm = 6, gr = 2;
    std::string clauses_text;
    gen->add_option("mode", gen_mode)->check(CLI::IsMember({"planted", "3sat-base", "repeat"}));
    gen->add_option("--u", gu);
    gen->add_option("--v", gv);
    gen->add_option("--degree", gdeg);
    gen->add_option("--k", gk);
    gen->add_option("--m", gm);
    gen->add_option("--r", gr);
    gen->add_option("--clauses", clauses_text, "CNF as '1,2,-3;...' (3sat-base mode)");

    // reduce
    auto* reduce = app.add_subcommand("reduce", "materialize a reduction");
    std::string reduce_variant;
    std::string text_out;
    reduce->add_option("variant", reduce_variant)->required();
    reduce->add_option("--text-out", text_out, "also write the text export here");

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate proofs against a reduction");
    std::string eval_variant, proofs_spec = "longcode";
    eval->add_option("--variant", eval_variant, "override variant from input");
    eval->add_option("--proofs", proofs_spec, "longcode | random | ones | path to proofs.v1");

    // check
    auto* check = app.add_subcommand("check", "run the full lemma-check suite");
    std::string trials = "default";
    check->add_option("--trials", trials, "'default' or a per-suite trial count");

    // decode
    auto* decode = app.add_subcommand("decode", "decode proofs into a labeling");
    std::string decode_variant = "e3sat", decode_proofs = "longcode";
    decode->add_option("--variant", decode_variant);
    decode->add_option("--proofs", decode_proofs);

    // params
    auto* params = app.add_subcommand("params", "print a parameter schedule");
    std::string params_variant = "e3sat", c0_text = "1", cprime_text = "1";
    params->add_option("--variant", params_variant);
    params->add_option("--c0", c0_text);
    params->add_option("--cprime", cprime_text);

    // global flags (--seed, --in, ...) may appear after the subcommand
    for (CLI::App* sub : {gen, reduce, eval, check, decode, params}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    if (gen->parsed()) {
        Json out;
        if (gen_mode == "planted") {
            auto [inst, labeling] = generate_planted(gu, gv, gdeg, gk, gm, seed);
            out = {{"instance", to_json(inst)}, {"labeling", to_json(labeling)}};
        } else if (gen_mode == "3sat-base") {
            LabelCoverInstance inst = from_3sat_base_game(parse_clauses(clauses_text));
            out = {{"instance", to_json(inst)}};
        } else {
            LoadedInput in = load_input(in_path);
            LabelCoverInstance inst = parallel_repetition(in.instance, gr, cap_states);
            out = {{"instance", to_json(inst)}};
            if (in.has_labeling)
                out["labeling"] = to_json(lift_labeling(in.labeling, in.instance.u_count,
                                                        in.instance.v_count, in.instance.k,
                                                        in.instance.m, gr));
        }
        emit(out_path, out.dump() + "\n");
        return 0;
    }

    if (reduce->parsed()) {
        LoadedInput in = load_input(in_path);
        Rational eps = parse_unit_interval(eps_text, "--eps");
        ReductionKind kind = parse_variant(reduce_variant);
        std::ostringstream text;
        if (kind == ReductionKind::hypergraph) {
            write_hypergraph(text, build_hypergraph(in.instance), cap_states);
        } else if (kind == ReductionKind::e3sat) {
            write_wcnf(text, export_e3sat_cnf(in.instance, eps, cap_states));
        } else {
            write_setsplit(text, export_4ss_instance(in.instance, eps, cap_states));
        }
        Json out = {{"variant", reduce_variant},
                    {"eps", format_rational(eps)},
                    {"instance", to_json(in.instance)},
                    {"export", text.str()}};
        if (in.has_labeling) out["labeling"] = to_json(in.labeling);
        if (!text_out.empty()) emit(text_out, text.str());
        emit(out_path, out.dump() + "\n");
        return 0;
    }

    if (eval->parsed()) {
        LoadedInput in = load_input(in_path);
        std::string variant_name = !eval_variant.empty() ? eval_variant : in.variant;
        if (variant_name.empty()) throw config_error("eval: no variant given or found in input");
        ReductionKind kind = parse_variant(variant_name);
        Rational eps = parse_unit_interval(!in.eps.empty() ? in.eps : eps_text, "--eps");
        ProofAssignment proofs = make_proofs(in, proofs_spec, kind, seed);
        bool exact = mode == "exact" ||
                     (mode == "auto" && (std::size_t(1) << (2 * in.instance.m)) *
                                                in.instance.edges.size() <=
                                            cap_states);
        Json rep = {{"variant", variant_name}, {"mode", exact ? "exact" : "sample"}};
        if (kind == ReductionKind::e3sat) {
            if (exact) {
                rep["acceptance"] = format_rational(e3sat_acceptance_exact(in.instance, proofs, eps));
            } else {
                auto est = e3sat_acceptance_sampled(in.instance, proofs, eps, samples, seed);
                rep["acceptance"] = format_rational(est.mean);
                rep["standard_error"] = est.standard_error;
                rep["samples"] = est.samples;
            }
        } else if (kind == ReductionKind::fourss) {
            if (exact) {
                rep["rejection"] = format_rational(fourss_rejection_exact(in.instance, proofs, eps));
            } else {
                auto est = fourss_rejection_sampled(in.instance, proofs, eps, samples, seed);
                rep["rejection"] = format_rational(est.mean);
                rep["standard_error"] = est.standard_error;
                rep["samples"] = est.samples;
            }
        } else {
            if (!in.has_labeling)
                throw input_error("eval hypergraph: input must carry a perfect labeling");
            HypergraphInstance h = build_hypergraph(in.instance);
            auto color = yes_two_coloring(in.instance, in.labeling);
            if (exact) {
                rep["monochromatic"] = format_rational(monochromatic_fraction_exact(h, color));
            } else {
                rep["monochromatic_count"] = monochromatic_count_sampled(h, color, samples, seed);
                rep["samples"] = samples;
            }
        }
        emit(out_path, rep.dump() + "\n");
        return 0;
    }

    if (check->parsed()) {
        CheckConfig cfg;
        cfg.seed = seed;
        if (trials != "default") {
            int n = std::stoi(trials);
            if (n <= 0) throw config_error("--trials must be positive or 'default'");
            cfg.gamma_projections = cfg.bb1_trials = cfg.rt_trials = n;
            cfg.mixing_trials = cfg.pmeasure_trials = cfg.parseval_trials = n;
            cfg.albeta_trials = n;
        }
        std::ostringstream report;
        bool ok = run_all_checks(cfg, report);
        emit(out_path, report.str());
        return ok ? 0 : 1;
    }

    if (decode->parsed()) {
        LoadedInput in = load_input(in_path);
        ReductionKind kind = parse_variant(decode_variant);
        ProofAssignment proofs = make_proofs(in, decode_proofs, kind, seed);
        DecodingOutcome outcome = decode_labeling(in.instance, proofs, seed, kind);
        int abstains = 0;
        for (char a : outcome.abstain_left) abstains += a;
        for (char a : outcome.abstain_right) abstains += a;
        Json rep = {{"variant", decode_variant},
                    {"labeling", to_json(outcome.labeling)},
                    {"abstains", abstains},
                    {"satisfied_fraction", format_rational(outcome.satisfied_fraction)},
                    {"expected_value", format_rational(outcome.expected_value)}};
        emit(out_path, rep.dump() + "\n");
        return 0;
    }

    // params
    ReductionKind kind = parse_variant(params_variant);
    Rational param = parse_unit_interval(
        kind == ReductionKind::e3sat ? eps_text : delta_text,
        kind == ReductionKind::e3sat ? "--eps" : "--delta");
    Rational c0 = parse_rational(c0_text), cprime = parse_rational(cprime_text);
    ParameterSchedule sched = parameter_schedule(kind, param, c0, cprime);
    Json rep = {{"variant", params_variant},
                {"R", sched.R},
                {"T", sched.T},
                {"eps", format_rational(sched.eps)}};
    emit(out_path, rep.dump() + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& ex) {
        nlohmann::json err = {{"error", ex.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    }
}
