// Command-line front end: validate character tables, inspect constituent
// profiles and partial-sum sets, run the degree sieves and the exclusion
// engine, and produce the end-to-end certificate.
//
// Exit codes: 0 success (certify: verdict present), 2 a pipeline step failed,
// 3 malformed input.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "excsing/certify.hpp"
#include "excsing/data_io.hpp"
#include "excsing/reps.hpp"
#include "excsing/version.hpp"

using namespace excsing;

namespace {

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct LoadedTable {
    CharacterTable table;
    std::string digest;
};

LoadedTable load_table(const std::string& path) {
    const std::string bytes = read_file(path);
    std::istringstream in(bytes);
    return {CharacterTable::parse(in, {}), "sha256:" + sha256_hex(bytes)};
}

void emit(const nlohmann::ordered_json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("cannot write output file: " + out_path);
    out << j.dump(2) << "\n";
}

SieveMode pick_mode(bool strict, bool remarks) {
    if (strict) return SieveMode::strict_lemma;
    if (remarks) return SieveMode::with_remarks;
    return SieveMode::defaults;
}

nlohmann::ordered_json search_output(std::int64_t n, const ConstraintSet& cs,
                                     const std::vector<HilbertCandidate>& results) {
    nlohmann::ordered_json constraints = nlohmann::ordered_json::array();
    constraints.push_back("membership-1.." + std::to_string(cs.membership_max));
    constraints.push_back("h-monotone-1.." + std::to_string(cs.h_monotone_max));
    if (cs.q_monotone) constraints.push_back("q-monotone");
    if (cs.degree_divisor > 1)
        constraints.push_back("divisibility-" + std::to_string(cs.degree_divisor));
    if (cs.degree_cap) constraints.push_back("degree-cap-" + std::to_string(*cs.degree_cap));
    if (cs.q1_q2_zero) constraints.push_back("q1-q2-zero");
    if (cs.q3_zero) constraints.push_back("q3-zero");
    if (cs.q4_positive_forces_d9) constraints.push_back("q4-degree");
    if (cs.forbid_zero_h) constraints.push_back("forbid-zero-h");
    for (const auto& ineq : cs.inequalities) constraints.push_back(ineq.name);

    nlohmann::ordered_json solutions = nlohmann::ordered_json::array();
    for (const auto& c : results)
        solutions.push_back({{"d", c.d}, {"h", c.h}, {"q", c.q}});
    return nlohmann::ordered_json{{"schema", kSchemaVersion},
                                  {"n", n},
                                  {"solutions", std::move(solutions)},
                                  {"constraints", std::move(constraints)}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification toolkit for the equivariant threshold bound on P^8"};
    app.require_subcommand(1);

    std::string vt_file;
    auto* vt = app.add_subcommand("validate-table", "parse and fully validate a character table");
    vt->add_option("file", vt_file, "table JSON file")->required();

    struct DataOpts {
        std::string table_file;
        bool paper_data = false;
    };
    auto add_data_opts = [](CLI::App* cmd, DataOpts& o) {
        auto* t = cmd->add_option("--table", o.table_file, "character table JSON file");
        cmd->add_flag("--paper-data", o.paper_data, "use the built-in profile data")
            ->excludes(t);
    };

    std::int64_t delta_k = 0;
    DataOpts delta_opts;
    std::string delta_out;
    auto* delta_cmd = app.add_subcommand("delta", "constituent dimension profile of Sym^k");
    delta_cmd->add_option("--k", delta_k, "symmetric power")->required();
    add_data_opts(delta_cmd, delta_opts);
    delta_cmd->add_option("--out", delta_out, "output file (default stdout)");

    std::int64_t sigma_k = 0;
    DataOpts sigma_opts;
    std::string sigma_out;
    auto* sigma_cmd = app.add_subcommand("sigma", "partial-sum set of the degree-k profile");
    sigma_cmd->add_option("--k", sigma_k, "symmetric power")->required();
    add_data_opts(sigma_cmd, sigma_opts);
    sigma_cmd->add_option("--out", sigma_out, "output file (default stdout)");

    std::int64_t si_max = 0;
    DataOpts si_opts;
    std::string si_out;
    auto* si_cmd = app.add_subcommand("semi-invariants", "count semi-invariants by degree");
    si_cmd->add_option("--max-degree", si_max, "largest degree to scan")->required();
    add_data_opts(si_cmd, si_opts);
    si_cmd->add_option("--out", si_out, "output file (default stdout)");

    std::int64_t search_n = 0;
    std::string search_delta = "builtin:paper";
    std::string search_out;
    bool search_strict = false, search_remarks = false, search_forbid_zero = false;
    auto* search_cmd = app.add_subcommand("search", "run the degree-n sieve");
    search_cmd->add_option("--n", search_n, "degree of the candidate polynomial (1..6)")
        ->required();
    search_cmd->add_option("--delta", search_delta,
                           "profile data: a file or builtin:paper (default)");
    auto* strict_flag =
        search_cmd->add_flag("--strict-lemma", search_strict, "printed hypothesis lists only");
    search_cmd->add_flag("--with-remarks", search_remarks, "apply the geometric remark constraints")
        ->excludes(strict_flag);
    search_cmd->add_flag("--forbid-zero-h", search_forbid_zero,
                         "exclude h_m = 0 from sum-set membership");
    search_cmd->add_option("--out", search_out, "output file (default stdout)");

    std::string excl_input;
    std::string excl_delta = "builtin:paper";
    std::string excl_out;
    auto* excl_cmd = app.add_subcommand("exclude", "run the exclusion engine on sieve output");
    excl_cmd->add_option("file", excl_input, "search output JSON file")->required();
    excl_cmd->add_option("--delta", excl_delta, "profile data: a file or builtin:paper (default)");
    excl_cmd->add_option("--out", excl_out, "output file (default stdout)");

    DataOpts cert_opts;
    std::string cert_out;
    bool cert_strict = false, cert_remarks = false;
    auto* cert_cmd = app.add_subcommand("certify", "run the whole pipeline and emit a certificate");
    add_data_opts(cert_cmd, cert_opts);
    auto* cert_strict_flag =
        cert_cmd->add_flag("--strict-lemma", cert_strict, "printed hypothesis lists only");
    cert_cmd->add_flag("--with-remarks", cert_remarks, "apply the geometric remark constraints")
        ->excludes(cert_strict_flag);
    cert_cmd->add_option("--out", cert_out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (vt->parsed()) {
            const LoadedTable loaded = load_table(vt_file);
            emit({{"schema", kSchemaVersion},
                  {"valid", true},
                  {"order", loaded.table.order()},
                  {"classes", loaded.table.class_count()},
                  {"irreducibles", loaded.table.irreducible_count()},
                  {"designated", loaded.table.designated().name},
                  {"digest", loaded.digest}},
                 "");
            return 0;
        }

        auto profile_for = [](const DataOpts& o, std::int64_t k) -> DimensionProfile {
            if (!o.table_file.empty()) {
                const LoadedTable loaded = load_table(o.table_file);
                return delta_profile(loaded.table, k);
            }
            const DeltaData d = builtin_delta_data();
            if (k < 1 || k > static_cast<std::int64_t>(d.profiles.size()))
                throw Error("built-in profile data covers k = 1.." +
                            std::to_string(d.profiles.size()));
            return d.profiles[static_cast<std::size_t>(k - 1)];
        };

        if (delta_cmd->parsed()) {
            const DimensionProfile p = profile_for(delta_opts, delta_k);
            emit({{"schema", kSchemaVersion}, {"k", delta_k}, {"profile", profile_to_json(p)}},
                 delta_out);
            return 0;
        }

        if (sigma_cmd->parsed()) {
            const DimensionProfile p = profile_for(sigma_opts, sigma_k);
            emit({{"schema", kSchemaVersion}, {"k", sigma_k}, {"sums", sigma(p).achievable()}},
                 sigma_out);
            return 0;
        }

        if (si_cmd->parsed()) {
            nlohmann::ordered_json counts = nlohmann::ordered_json::array();
            if (!si_opts.table_file.empty()) {
                const LoadedTable loaded = load_table(si_opts.table_file);
                for (std::int64_t d = 1; d <= si_max; ++d)
                    counts.push_back({d, semi_invariant_count(loaded.table, d)});
            } else {
                const DeltaData d = builtin_delta_data();
                if (si_max > d.first_positive_degree)
                    throw Error("built-in scan data covers degrees 1.." +
                                std::to_string(d.first_positive_degree) +
                                "; a character table is required beyond that");
                for (std::int64_t deg = 1; deg <= si_max; ++deg) {
                    if (deg <= d.none_through_degree)
                        counts.push_back({deg, 0});
                    else
                        counts.push_back({deg, 1});  // at least one semi-invariant exists
                }
            }
            emit({{"schema", kSchemaVersion}, {"maxDegree", si_max}, {"counts", std::move(counts)}},
                 si_out);
            return 0;
        }

        if (search_cmd->parsed()) {
            const DeltaData data = load_delta_data(search_delta);
            ConstraintSet cs =
                builtin_constraints(search_n, pick_mode(search_strict, search_remarks));
            cs.forbid_zero_h = search_forbid_zero;
            if (static_cast<std::int64_t>(data.profiles.size()) < cs.membership_max)
                throw Error("profile data covers k = 1.." + std::to_string(data.profiles.size()) +
                            " but the degree-" + std::to_string(search_n) + " sieve needs k = 1.." +
                            std::to_string(cs.membership_max));
            const SigmaTable sig = SigmaTable::from_profiles(data.profiles);
            emit(search_output(search_n, cs, search(sig, cs)), search_out);
            return 0;
        }

        if (excl_cmd->parsed()) {
            nlohmann::json input;
            try {
                input = nlohmann::json::parse(read_file(excl_input));
            } catch (const nlohmann::json::parse_error& e) {
                throw ParseError(std::string("search output is not valid JSON: ") + e.what());
            }
            const DeltaData data = load_delta_data(excl_delta);
            nlohmann::ordered_json cases = nlohmann::ordered_json::array();
            bool all_refuted = true;
            try {
                const std::int64_t n = input.at("n").get<std::int64_t>();
                for (const auto& sol : input.at("solutions")) {
                    HilbertCandidate cand;
                    cand.n = n;
                    cand.d = sol.at("d").get<std::int64_t>();
                    for (const auto& v : sol.at("h")) cand.h.push_back(v.get<std::int64_t>());
                    for (const auto& v : sol.at("q")) cand.q.push_back(v.get<std::int64_t>());
                    cand.horizon = static_cast<std::int64_t>(cand.h.size());
                    const Refutation r =
                        exclude_case(make_case(cand, data.profiles, data.tensor_facts));
                    const bool refuted = r.verdict == Verdict::refuted;
                    all_refuted = all_refuted && refuted;
                    nlohmann::ordered_json trace = nlohmann::ordered_json::array();
                    for (const auto& s : r.trace)
                        trace.push_back({{"rule", s.rule}, {"data", s.data}});
                    cases.push_back({{"case", {{"n", cand.n}, {"d", cand.d}, {"q", cand.q}}},
                                     {"verdict", refuted ? "refuted" : "inconclusive"},
                                     {"trace", std::move(trace)}});
                }
            } catch (const nlohmann::json::exception& e) {
                throw ParseError(std::string("malformed search output: ") + e.what());
            }
            emit({{"schema", kSchemaVersion}, {"cases", std::move(cases)}}, excl_out);
            return all_refuted ? 0 : 2;
        }

        if (cert_cmd->parsed()) {
            CertifyConfig config;
            config.sieve_mode = pick_mode(cert_strict, cert_remarks);
            std::optional<LoadedTable> loaded;
            if (!cert_opts.table_file.empty()) {
                loaded = load_table(cert_opts.table_file);
                config.mode = CertifyConfig::Mode::table;
                config.table = &loaded->table;
                config.table_digest = loaded->digest;
            }
            const Certificate cert = certify(config);
            emit(cert.to_json(), cert_out);
            return cert.verdict ? 0 : 2;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
