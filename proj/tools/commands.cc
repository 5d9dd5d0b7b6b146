// Copyright 2026 The qmeas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.h"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "qmeas/ancilla.h"
#include "qmeas/discrimination.h"
#include "qmeas/error.h"
#include "qmeas/io.h"
#include "qmeas/measurement.h"
#include "qmeas/neumark.h"
#include "qmeas/states.h"
#include "report.h"

namespace qmeas::cli {

namespace {

constexpr double kRoundTripBound = 1e-9;

struct CommonOptions {
    double tol_abs = Tolerance{}.atol;
    double tol_rel = Tolerance{}.rtol;
    bool timing = false;

    Tolerance tolerance() const { return Tolerance{tol_abs, tol_rel}; }
};

struct ValidateOptions {
    std::string input;
};

struct MeasureOptions {
    std::string set;
    std::string state;
    bool mixed = false;
    std::string post;
    std::uint64_t sample = 0;
    std::uint64_t seed = 0;
    bool has_post = false;
    bool has_sample = false;
};

struct DiscriminateOptions {
    std::string psi;
    std::string phi;
    double a = 0.0;
    bool has_a = false;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

struct DilateOptions {
    std::string input;
    std::string out;
    std::string mapping;
    std::uint64_t verify_trials = 100;
    std::uint64_t seed = 0;
};

struct RealizeOptions {
    std::string input;
    std::string out;
};

/// Raised by a command that ran to completion but whose result fails a
/// domain check (the report is already filled in).
struct DomainFailure {
    std::string message;
};

/// Report under construction plus the input bookkeeping shared by commands.
class Session {
  public:
    explicit Session(std::string command) {
        report_["schema_version"] = io::kSchemaVersion;
        report_["command"] = std::move(command);
        report_["arguments"] = OrderedJson::object();
        report_["inputs"] = OrderedJson::array();
        report_["status"] = "ok";
    }

    OrderedJson &report() { return report_; }
    OrderedJson &arguments() { return report_["arguments"]; }

    io::Json load(const std::string &path, const char *role) {
        const std::string text = io::read_text_file(path);
        OrderedJson entry;
        entry["role"] = role;
        entry["path"] = path;
        entry["sha256"] = sha256_hex(text);
        report_["inputs"].push_back(std::move(entry));
        try {
            return io::parse_json(text);
        } catch (const io::FormatError &e) {
            throw io::FormatError(path + ": " + e.what());
        }
    }

    io::OperatorSetFile load_operator_set(const std::string &path, const char *role) {
        const io::Json j = load(path, role);
        try {
            return io::parse_operator_set(j);
        } catch (const io::FormatError &e) {
            throw io::FormatError(path + ": " + e.what());
        }
    }

    io::StateFile load_state(const std::string &path, const char *role) {
        const io::Json j = load(path, role);
        try {
            return io::parse_state(j);
        } catch (const io::FormatError &e) {
            throw io::FormatError(path + ": " + e.what());
        }
    }

    void write_output(const std::string &path, const char *role, const std::string &contents) {
        io::write_text_file(path, contents);
        OrderedJson entry;
        entry["role"] = role;
        entry["path"] = path;
        entry["sha256"] = sha256_hex(contents);
        report_["outputs"].push_back(std::move(entry));
    }

  private:
    OrderedJson report_;
};

OrderedJson error_json(const Error &e) {
    OrderedJson out;
    out["kind"] = error_kind_name(e.kind());
    out["message"] = e.what();
    OrderedJson indices = OrderedJson::array();
    if (e.first()) {
        indices.push_back(*e.first());
    }
    if (e.second()) {
        indices.push_back(*e.second());
    }
    out["indices"] = std::move(indices);
    return out;
}

PovmSet povm_from_file(io::OperatorSetFile file, const Tolerance &tol) {
    if (file.kind == "kraus") {
        return povm_from_kraus(validate_kraus(std::move(file.outcomes), tol), tol);
    }
    return validate_povm(std::move(file.outcomes), tol);
}

OrderedJson effects_json(const OperatorSet &set) {
    OrderedJson out = OrderedJson::array();
    for (const auto &entry : set.outcomes()) {
        OrderedJson item;
        item["label"] = entry.label;
        item["matrix"] = io::matrix_json(entry.op);
        out.push_back(std::move(item));
    }
    return out;
}

PureState pure_from_file(const io::StateFile &file, const char *role) {
    if (file.kind != "pure") {
        throw Error(ErrorKind::ValidationFailure, std::string(role) + " must be a pure state");
    }
    return PureState(file.amplitudes);
}

// ---------------------------------------------------------------------------

void cmd_validate(Session &s, const ValidateOptions &o, const Tolerance &tol) {
    s.arguments()["input"] = o.input;
    io::OperatorSetFile file = s.load_operator_set(o.input, "operator_set");
    OrderedJson &r = s.report();
    r["kind"] = file.kind;
    r["dim"] = file.dim;
    r["outcome_count"] = file.outcomes.size();

    try {
        if (file.kind == "pvm") {
            validate_pvm(std::move(file.outcomes), tol);
        } else if (file.kind == "povm") {
            validate_povm(std::move(file.outcomes), tol);
        } else {
            validate_kraus(std::move(file.outcomes), tol);
        }
        r["valid"] = true;
    } catch (const Error &e) {
        r["valid"] = false;
        r["violation"] = error_json(e);
        throw DomainFailure{e.what()};
    }
}

void cmd_measure(Session &s, const MeasureOptions &o, const Tolerance &tol) {
    OrderedJson &args = s.arguments();
    args["set"] = o.set;
    args["state"] = o.state;
    args["mixed"] = o.mixed;
    if (o.has_post) {
        args["post"] = o.post;
    }
    if (o.has_sample) {
        args["sample"] = o.sample;
        args["seed"] = o.seed;
    }

    io::OperatorSetFile set_file = s.load_operator_set(o.set, "operator_set");
    const io::StateFile state_file = s.load_state(o.state, "state");
    if (set_file.dim != state_file.dim) {
        throw Error(ErrorKind::ShapeMismatch, "operator set has dim " + std::to_string(set_file.dim) +
                                                  " but state has dim " + std::to_string(state_file.dim));
    }

    std::optional<PureState> psi;
    std::optional<DensityMatrix> rho;
    if (state_file.kind == "pure") {
        psi.emplace(state_file.amplitudes);
        rho.emplace(density_from_pure(*psi));
    } else {
        rho.emplace(state_file.matrix, tol);
    }

    OrderedJson &r = s.report();
    r["kind"] = set_file.kind;
    std::optional<OutcomeDistribution> dist;
    if (set_file.kind == "pvm") {
        const PvmSet pvm = validate_pvm(std::move(set_file.outcomes), tol);
        if (psi && !o.mixed) {
            r["rule"] = "pvm_pure";
            dist = pvm_probabilities(pvm, *psi);
            if (o.has_post) {
                r["post_state"] = io::pure_state_json(pvm_post_state(pvm, o.post, *psi));
            }
        } else {
            r["rule"] = "pvm_mixed";
            dist = pvm_probabilities_mixed(pvm, *rho);
            if (o.has_post) {
                r["post_state"] = io::density_json(pvm_post_state_mixed(pvm, o.post, *rho));
            }
        }
    } else if (set_file.kind == "kraus") {
        r["rule"] = "kraus";
        const KrausSet kraus = validate_kraus(std::move(set_file.outcomes), tol);
        dist = kraus_probabilities(kraus, *rho);
        if (o.has_post) {
            r["post_state"] = io::density_json(povm_post_state(kraus, o.post, *rho));
        }
    } else {
        r["rule"] = "povm";
        const PovmSet povm = validate_povm(std::move(set_file.outcomes), tol);
        dist = povm_probabilities(povm, *rho);
        if (o.has_post) {
            // The principal-root Kraus form fixes the post-measurement state.
            r["post_state"] = io::density_json(povm_post_state(kraus_from_povm(povm, tol), o.post, *rho));
        }
    }
    r["distribution"] = distribution_json(*dist);
    if (o.has_sample) {
        OrderedJson sample;
        sample["n"] = o.sample;
        sample["seed"] = o.seed;
        sample["counts"] = counts_json(sample_outcomes(*dist, o.sample, o.seed));
        r["sample"] = std::move(sample);
    }
}

OrderedJson trial_json(const TrialReport &t) {
    OrderedJson out;
    out["ground_truth"] = t.ground_truth == Candidate::Psi ? "psi" : "phi";
    out["trials"] = t.trials;
    out["definitely_psi"] = t.definitely_psi;
    out["definitely_phi"] = t.definitely_phi;
    out["inconclusive"] = t.inconclusive;
    out["wrong_conclusive"] = t.wrong_conclusive;
    out["conclusive_rate"] = t.conclusive_rate;
    out["expected_conclusive_rate"] = t.expected_conclusive_rate;
    out["error_rate"] = t.error_rate;
    return out;
}

void cmd_discriminate(Session &s, const DiscriminateOptions &o, const Tolerance &tol) {
    OrderedJson &args = s.arguments();
    args["psi"] = o.psi;
    args["phi"] = o.phi;
    if (o.has_a) {
        args["a"] = o.a;
    }
    args["trials"] = o.trials;
    args["seed"] = o.seed;

    const PureState psi = pure_from_file(s.load_state(o.psi, "psi"), "psi");
    const PureState phi = pure_from_file(s.load_state(o.phi, "phi"), "phi");
    OrderedJson &r = s.report();
    if (psi.dim() == phi.dim()) {
        r["overlap_abs"] = std::abs(overlap(psi, phi));
        r["a_max"] = max_feasible_parameter(psi, phi);
    }
    const DiscriminationPovm d =
        build_discrimination_povm(psi, phi, o.has_a ? std::optional<double>(o.a) : std::nullopt, tol);
    r["a"] = d.a;
    r["effects"] = effects_json(d.povm);

    const OutcomeDistribution given_psi = discrimination_probabilities(d, Candidate::Psi);
    const OutcomeDistribution given_phi = discrimination_probabilities(d, Candidate::Phi);
    r["given_psi"] = distribution_json(given_psi);
    r["given_phi"] = distribution_json(given_phi);

    const double conclusive = conclusive_probability(psi, phi, d.a);
    r["closed_form_conclusive"] = conclusive;
    OrderedJson checks = OrderedJson::array();
    checks.push_back(check_json("p(0|psi) = 0", given_psi.probability("0"), 1e-12));
    checks.push_back(check_json("p(1|phi) = 0", given_phi.probability("1"), 1e-12));
    checks.push_back(check_json("p(1|psi) closed form", std::abs(given_psi.probability("1") - conclusive), 1e-10));
    checks.push_back(check_json("p(0|phi) closed form", std::abs(given_phi.probability("0") - conclusive), 1e-10));
    r["checks"] = std::move(checks);

    if (o.trials > 0) {
        OrderedJson trials = OrderedJson::array();
        trials.push_back(trial_json(discrimination_trial(d, Candidate::Psi, o.trials, o.seed)));
        trials.push_back(trial_json(discrimination_trial(d, Candidate::Phi, o.trials, o.seed + 1)));
        r["trials"] = std::move(trials);
    }
}

void cmd_dilate(Session &s, const DilateOptions &o, const Tolerance &tol) {
    const std::string mapping = o.mapping.empty() ? o.out + ".mapping.json" : o.mapping;
    OrderedJson &args = s.arguments();
    args["input"] = o.input;
    args["out"] = o.out;
    args["mapping"] = mapping;
    args["verify_trials"] = o.verify_trials;
    args["seed"] = o.seed;

    const PovmSet povm = povm_from_file(s.load_operator_set(o.input, "povm"), tol);
    OrderedJson &r = s.report();
    const RankOneRefinement refinement = refine_to_rank_one(povm, tol);
    r["original_dim"] = povm.dim();
    r["fine_count"] = refinement.fine_count();

    std::optional<NeumarkDilation> d;
    try {
        d.emplace(dilate(refinement, tol));
    } catch (const DilationError &e) {
        OrderedJson failure;
        failure["identity"] = e.identity();
        failure["residual"] = e.residual();
        r["dilation_failure"] = std::move(failure);
        throw;
    }
    r["enlarged_dim"] = d->enlarged_dim;

    const DilationReport verification = verify_dilation(*d, povm, o.verify_trials, o.seed);
    OrderedJson checks = OrderedJson::array();
    checks.push_back(check_json("M M^dagger = P_U", verification.residuals.subspace_projector, kDilationTolerance));
    checks.push_back(check_json("M~^dagger M~ = I", verification.residuals.orthonormality, kDilationTolerance));
    checks.push_back(check_json("P_U M~ = M", verification.residuals.projection, kDilationTolerance));
    checks.push_back(check_json("Q_j = P_U P_j P_U", verification.residuals.fine_effect, kDilationTolerance));
    checks.push_back(check_json("Q_i = sum_j P_U P_j P_U", verification.coarse_effect, kDilationTolerance));
    if (verification.probability_discrepancy) {
        checks.push_back(check_json("coarse probabilities", *verification.probability_discrepancy, kDilationTolerance));
    }
    r["checks"] = std::move(checks);
    r["verify_trials"] = verification.trials;

    s.write_output(o.out, "pvm", io::dump(io::operator_set_json("pvm", d->pvm)));
    s.write_output(mapping, "mapping", io::dump(io::dilation_mapping_json(*d)));

    if (!verification.passed()) {
        throw DomainFailure{"dilation verification failed: " + verification.failures.front()};
    }
}

void cmd_realize(Session &s, const RealizeOptions &o, const Tolerance &tol) {
    s.arguments()["input"] = o.input;
    s.arguments()["out"] = o.out;

    io::OperatorSetFile file = s.load_operator_set(o.input, "povm");
    const bool given_kraus = file.kind == "kraus";
    const KrausSet kraus = given_kraus ? validate_kraus(std::move(file.outcomes), tol)
                                       : kraus_from_povm(validate_povm(std::move(file.outcomes), tol), tol);
    const PovmSet target = povm_from_kraus(kraus, tol);

    OrderedJson &r = s.report();
    r["kraus_source"] = given_kraus ? "file" : "principal_square_root";
    const AncillaModel model = realize_povm_with_ancilla(kraus, tol);
    r["system_dim"] = model.system_dim();
    r["ancilla_dim"] = model.ancilla_dim();

    const ComplexMatrix &a = model.unitary();
    const double unitarity = max_abs(a.adjoint() * a - ComplexMatrix::Identity(a.rows(), a.cols()));
    const PovmSet induced = induced_povm(model, tol);
    double round_trip = 0.0;
    for (std::size_t i = 0; i < target.size(); ++i) {
        round_trip = std::max(round_trip, max_abs(induced.op(i) - target.op(i)));
    }
    OrderedJson checks = OrderedJson::array();
    checks.push_back(check_json("A^dagger A = I", unitarity, 1e-10));
    checks.push_back(check_json("induced POVM round trip", round_trip, kRoundTripBound));
    r["checks"] = std::move(checks);

    s.write_output(o.out, "model", io::dump(io::ancilla_model_json(model)));
    if (!(round_trip <= kRoundTripBound)) {
        throw DomainFailure{"induced POVM differs from the input by " + io::format_double(round_trip)};
    }
}

void add_common(CLI::App *sub, CommonOptions &common) {
    sub->add_option("--tol-abs", common.tol_abs, "Absolute tolerance")->check(CLI::NonNegativeNumber);
    sub->add_option("--tol-rel", common.tol_rel, "Relative tolerance")->check(CLI::NonNegativeNumber);
    sub->add_flag("--timing", common.timing, "Include wall time in the report");
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum measurement toolkit: PVM/POVM semantics, discrimination, Neumark dilation"};
    app.name(args.empty() ? "qmeas" : args.front());
    app.require_subcommand(1);

    CommonOptions common;
    ValidateOptions validate;
    MeasureOptions measure;
    DiscriminateOptions discriminate;
    DilateOptions dilate_opts;
    RealizeOptions realize;

    auto *v = app.add_subcommand("validate", "Check a PVM/POVM/Kraus operator file");
    v->add_option("input", validate.input, "Operator set file")->required();
    add_common(v, common);

    auto *m = app.add_subcommand("measure", "Outcome probabilities, post-measurement state, sampling");
    m->add_option("set", measure.set, "Operator set file")->required();
    m->add_option("state", measure.state, "State file")->required();
    m->add_flag("--mixed", measure.mixed, "Use the density-matrix rule for a PVM on a pure state");
    auto *post = m->add_option("--post", measure.post, "Emit the post-measurement state for LABEL");
    auto *sample = m->add_option("--sample", measure.sample, "Draw N outcomes");
    m->add_option("--seed", measure.seed, "Sampling seed");
    add_common(m, common);

    auto *d = app.add_subcommand("discriminate", "Unambiguous discrimination of two pure states");
    d->add_option("--psi", discriminate.psi, "State file for psi")->required();
    d->add_option("--phi", discriminate.phi, "State file for phi")->required();
    auto *a_opt = d->add_option("--a", discriminate.a, "Effect scale a (default: largest feasible)");
    d->add_option("--trials", discriminate.trials, "Monte-Carlo trials per ground truth");
    d->add_option("--seed", discriminate.seed, "Trial seed");
    add_common(d, common);

    auto *dl = app.add_subcommand("dilate", "Neumark dilation of a POVM into an enlarged-space PVM");
    dl->add_option("input", dilate_opts.input, "POVM file")->required();
    dl->add_option("--out", dilate_opts.out, "Output PVM file")->required();
    dl->add_option("--mapping", dilate_opts.mapping, "Output mapping file (default: <out>.mapping.json)");
    dl->add_option("--verify-trials", dilate_opts.verify_trials, "Random states for the probability check");
    dl->add_option("--seed", dilate_opts.seed, "Seed for the verification states");
    add_common(dl, common);

    auto *r = app.add_subcommand("realize", "Ancilla realization of a POVM");
    r->add_option("input", realize.input, "POVM or Kraus file")->required();
    r->add_option("--out", realize.out, "Output model file")->required();
    add_common(r, common);

    std::vector<const char *> argv;
    argv.reserve(args.size() + 1);
    if (args.empty()) {
        argv.push_back("qmeas");
    }
    for (const auto &arg : args) {
        argv.push_back(arg.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitIoOrParse;
    }
    measure.has_post = post->count() > 0;
    measure.has_sample = sample->count() > 0;
    discriminate.has_a = a_opt->count() > 0;

    CLI::App *chosen = app.get_subcommands().front();
    Session session(chosen->get_name());
    const auto started = std::chrono::steady_clock::now();
    int code = kExitOk;
    try {
        const Tolerance tol = common.tolerance();
        tol.check();
        session.arguments()["tol_abs"] = tol.atol;
        session.arguments()["tol_rel"] = tol.rtol;
        if (chosen == v) {
            cmd_validate(session, validate, tol);
        } else if (chosen == m) {
            cmd_measure(session, measure, tol);
        } else if (chosen == d) {
            cmd_discriminate(session, discriminate, tol);
        } else if (chosen == dl) {
            cmd_dilate(session, dilate_opts, tol);
        } else {
            cmd_realize(session, realize, tol);
        }
    } catch (const io::FormatError &e) {
        session.report()["status"] = "io_or_parse_error";
        session.report()["error"] = {{"kind", "FormatError"}, {"message", e.what()}};
        err << "qmeas: " << e.what() << "\n";
        code = kExitIoOrParse;
    } catch (const Error &e) {
        session.report()["status"] = "domain_failure";
        session.report()["error"] = error_json(e);
        err << "qmeas: " << e.what() << "\n";
        code = kExitDomainFailure;
    } catch (const DomainFailure &e) {
        session.report()["status"] = "domain_failure";
        err << "qmeas: " << e.message << "\n";
        code = kExitDomainFailure;
    } catch (const std::exception &e) {
        session.report()["status"] = "io_or_parse_error";
        session.report()["error"] = {{"kind", "Internal"}, {"message", e.what()}};
        err << "qmeas: " << e.what() << "\n";
        code = kExitIoOrParse;
    }
    session.report()["exit_code"] = code;
    if (common.timing) {
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
        session.report()["wall_time_seconds"] = elapsed.count();
    }
    out << io::dump(session.report());
    return code;
}

}  // namespace qmeas::cli
