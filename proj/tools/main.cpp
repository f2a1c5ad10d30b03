// Command-line front end: exact verifiers and family scanners with
// deterministic machine-readable output.
//
// Exit codes: 0 verified/computed, 1 a mathematical check failed, 2 usage,
// 3 resource limit.

#include "mhl/arithmetic.hpp"
#include "mhl/errors.hpp"
#include "mhl/f2linalg.hpp"
#include "mhl/steenrod.hpp"
#include "mhl/toplayer.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResourceLimit = 3;

struct RunConfig {
    std::string format = "text";  // json | csv | text
    std::string cache_dir;
    std::uint64_t max_cols = 1ull << 22;
    std::uint64_t max_rows = 1ull << 24;
    std::uint64_t seed = 0;

    mhl::Limits limits() const { return mhl::Limits{max_cols, max_rows}; }
    mhl::SubspaceStore store() const { return mhl::SubspaceStore(cache_dir); }
};

void emit_kv(const RunConfig& cfg, const json& doc,
             const std::vector<std::string>& text_lines) {
    if (cfg.format == "json") {
        std::cout << doc.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        std::cout << "key,value\n";
        for (auto it = doc.begin(); it != doc.end(); ++it)
            if (!it->is_structured())
                std::cout << it.key() << "," << (it->is_string() ? it->get<std::string>() : it->dump())
                          << "\n";
    } else {
        for (const std::string& line : text_lines)
            std::cout << line << "\n";
    }
}

int cmd_beta(const RunConfig& cfg, const std::string& dtext) {
    mhl::BitNat d;
    try {
        d = mhl::BitNat::from_decimal(dtext);
    } catch (const mhl::FormatError& e) {
        std::cerr << "beta: " << e.what() << "\n";
        return kExitUsage;
    }
    if (d.is_zero()) {
        std::cerr << "beta: d must be at least 1\n";
        return kExitUsage;
    }
    const std::uint64_t beta = mhl::beta_of(d);
    const std::uint64_t alpha_d = mhl::alpha_of(d);
    mhl::BitNat shifted = d;
    shifted.add_u64(beta);
    const std::uint64_t alpha_ctx = mhl::alpha_of(shifted);

    json doc{{"alpha_d", alpha_d},
             {"alpha_d_plus_beta", alpha_ctx},
             {"beta", beta},
             {"command", "beta"},
             {"d", d.to_decimal()}};
    emit_kv(cfg, doc,
            {"beta(" + d.to_decimal() + ") = " + std::to_string(beta),
             "alpha(" + d.to_decimal() + ") = " + std::to_string(alpha_d),
             "alpha(d + " + std::to_string(beta) + ") = " + std::to_string(alpha_ctx)});
    return kExitOk;
}

int cmd_verify_parity(const RunConfig& cfg, std::uint32_t n, std::uint32_t k) {
    if (k < 1 || k >= n) {
        std::cerr << "verify-parity: needs 1 <= k < n\n";
        return kExitUsage;
    }
    const mhl::Limits limits = cfg.limits();
    const mhl::SubspaceStore store = cfg.store();
    const mhl::SubspaceStore* store_ptr = store.enabled() ? &store : nullptr;
    mhl::Rng rng(cfg.seed);

    std::vector<mhl::VerificationReport> reports;
    bool all = true;
    json checks = json::array();
    try {
        const mhl::TopLayerContext ctx = mhl::build_context(n, k, limits);
        {
            mhl::VerificationReport rep;
            rep.check = "context";
            rep.passed = true;
            rep.details = mhl::context_summary(ctx);
            reports.push_back(std::move(rep));
        }
        reports.push_back(mhl::verify_parity_theorem(ctx, rng, limits, store_ptr));
        reports.push_back(mhl::verify_q0_edge_structure(ctx, limits));
        reports.push_back(mhl::verify_reduced_power_vanishing(ctx, limits));
        reports.push_back(mhl::johnson_orbit_check(n, k));
        reports.push_back(mhl::s_n_equivariance_check(ctx, 100, rng));
    } catch (const mhl::DecompositionFailure& e) {
        mhl::VerificationReport rep;
        rep.check = "context";
        rep.passed = false;
        rep.details = json{{"error", e.what()}};
        reports.push_back(std::move(rep));
    }

    std::vector<std::string> lines;
    for (const mhl::VerificationReport& rep : reports) {
        all = all && rep.passed;
        checks.push_back(rep.to_json());
        char buf[64];
        std::snprintf(buf, sizeof buf, " (%.1f ms)", rep.elapsed_ms);
        lines.push_back(std::string(rep.passed ? "[PASS] " : "[FAIL] ") + rep.check + buf);
    }
    lines.push_back(all ? "all checks passed" : "some checks FAILED");

    json doc{{"all_passed", all},
             {"checks", checks},
             {"command", "verify-parity"},
             {"k", k},
             {"n", n},
             {"seed", cfg.seed}};
    if (cfg.format == "json") {
        std::cout << doc.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        std::cout << "check,passed\n";
        for (const mhl::VerificationReport& rep : reports)
            std::cout << rep.check << "," << (rep.passed ? "true" : "false") << "\n";
    } else {
        for (const std::string& line : lines)
            std::cout << line << "\n";
    }
    return all ? kExitOk : kExitCheckFailed;
}

int cmd_hit_dim(const RunConfig& cfg, std::uint32_t n, std::uint64_t d) {
    const mhl::SubspaceStore store = cfg.store();
    const mhl::SubspaceStore* store_ptr = store.enabled() ? &store : nullptr;
    const std::uint64_t ambient = mhl::degree_count_saturating(n, d);
    const mhl::Subspace hit = mhl::hit_subspace(n, d, cfg.limits(), store_ptr);
    const std::uint64_t quotient = ambient - hit.rank();
    json doc{{"ambient_dim", ambient},
             {"command", "hit-dim"},
             {"d", d},
             {"hit_rank", hit.rank()},
             {"n", n},
             {"quotient_dim", quotient}};
    emit_kv(cfg, doc,
            {"ambient dim " + std::to_string(ambient),
             "hit rank " + std::to_string(hit.rank()),
             "quotient dim " + std::to_string(quotient)});
    return kExitOk;
}

json record_json(const mhl::FamilyRecord& rec) {
    json j{{"alpha_d_plus_n", rec.alpha_d_plus_n},
           {"beta_exceeds_n", rec.beta_exceeds_n},
           {"d", rec.d.to_decimal()},
           {"family", rec.family},
           {"k", rec.k},
           {"n", rec.n}};
    if (rec.r)
        j["r"] = *rec.r;
    if (rec.kameko_condition_holds)
        j["kameko_condition_holds"] = *rec.kameko_condition_holds;
    const std::string shorthand = rec.d.pow2_shorthand();
    if (!shorthand.empty())
        j["d_pow2"] = shorthand;
    return j;
}

std::string record_csv(const mhl::FamilyRecord& rec) {
    std::string out = rec.family + ",";
    out += (rec.r ? std::to_string(*rec.r) : "") + ",";
    out += std::to_string(rec.n) + "," + std::to_string(rec.k) + ",";
    out += rec.d.to_decimal() + "," + std::to_string(rec.alpha_d_plus_n) + ",";
    out += rec.beta_exceeds_n ? "true" : "false";
    out += ",";
    if (rec.kameko_condition_holds)
        out += *rec.kameko_condition_holds ? "true" : "false";
    return out;
}

std::string record_text(const mhl::FamilyRecord& rec) {
    std::string out = rec.family;
    if (rec.r)
        out += " r=" + std::to_string(*rec.r);
    out += " n=" + std::to_string(rec.n) + " k=" + std::to_string(rec.k);
    const std::string shorthand = rec.d.pow2_shorthand();
    out += " d=" + (shorthand.empty() ? rec.d.to_decimal() : shorthand);
    out += " alpha(d+n)=" + std::to_string(rec.alpha_d_plus_n);
    out += std::string(" beta>n=") + (rec.beta_exceeds_n ? "true" : "false");
    if (rec.kameko_condition_holds)
        out += std::string(" alpha(n-2)>=3=") + (*rec.kameko_condition_holds ? "true" : "false");
    return out;
}

int cmd_scan_family(const RunConfig& cfg, const std::string& kind, std::uint64_t lo,
                    std::uint64_t hi) {
    std::vector<mhl::FamilyRecord> records;
    std::size_t contradictions = 0;
    try {
        if (kind == "nm4") {
            records = mhl::scan_family_nm4(static_cast<std::uint32_t>(lo),
                                           static_cast<std::uint32_t>(hi));
            for (const mhl::FamilyRecord& rec : records)
                if (*rec.r >= 5 && !rec.beta_exceeds_n)
                    ++contradictions;
        } else if (kind == "nm3") {
            if (lo < 4 || hi < lo) {
                std::cerr << "scan-family nm3: needs 4 <= min <= max\n";
                return kExitUsage;
            }
            for (std::uint64_t n = lo; n <= hi; ++n) {
                records.push_back(mhl::check_family_nm3(n));
                const mhl::FamilyRecord& rec = records.back();
                if (*rec.kameko_condition_holds && !rec.beta_exceeds_n)
                    ++contradictions;
            }
        } else {
            std::cerr << "scan-family: kind must be nm4 or nm3\n";
            return kExitUsage;
        }
    } catch (const mhl::InvalidArgs& e) {
        std::cerr << "scan-family: " << e.what() << "\n";
        return kExitUsage;
    }

    if (cfg.format == "json") {
        json recs = json::array();
        for (const mhl::FamilyRecord& rec : records)
            recs.push_back(record_json(rec));
        json doc{{"command", "scan-family"},
                 {"contradictions", contradictions},
                 {"family", kind},
                 {"range", json::array({lo, hi})},
                 {"records", recs}};
        std::cout << doc.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        std::cout << "family,r,n,k,d,alpha_d_plus_n,beta_exceeds_n,kameko_condition_holds\n";
        for (const mhl::FamilyRecord& rec : records)
            std::cout << record_csv(rec) << "\n";
    } else {
        for (const mhl::FamilyRecord& rec : records)
            std::cout << record_text(rec) << "\n";
        std::cout << "contradictions: " << contradictions << "\n";
    }
    return contradictions == 0 ? kExitOk : kExitCheckFailed;
}

int cmd_classical_qdim(const RunConfig& cfg, std::uint32_t n, std::uint64_t d) {
    const std::uint64_t dim = mhl::classical_hit_quotient_dim(n, d, cfg.limits());
    const bool beta_gt = mhl::beta_exceeds(mhl::BitNat::from_u64(d), n);
    const bool wood_ok = !(beta_gt && dim > 0);
    json doc{{"beta_exceeds_n", beta_gt},
             {"command", "classical-qdim"},
             {"d", d},
             {"n", n},
             {"quotient_dim", dim},
             {"wood_consistent", wood_ok}};
    emit_kv(cfg, doc,
            {"quotient dim " + std::to_string(dim),
             std::string("beta(d) > n: ") + (beta_gt ? "true" : "false"),
             std::string("wood consistent: ") + (wood_ok ? "true" : "false")});
    return wood_ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact hit-problem verifiers over F2 and big-integer family scans"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand arguments

    RunConfig cfg;
    app.add_option("--format", cfg.format, "output format: json, csv, or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--cache-dir", cfg.cache_dir, "directory for subspace cache files")
        ->envname("MHL_CACHE_DIR");
    app.add_option("--max-cols", cfg.max_cols, "column limit for generated bases");
    app.add_option("--max-rows", cfg.max_rows, "row limit for generated spans");
    app.add_option("--seed", cfg.seed, "seed for randomized checks");

    std::string beta_d;
    CLI::App* beta = app.add_subcommand("beta", "compute beta(d) and alpha context");
    beta->add_option("d", beta_d, "decimal degree, d >= 1")->required();

    std::uint32_t vp_n = 0, vp_k = 0;
    CLI::App* vp = app.add_subcommand("verify-parity",
                                      "run every top-layer check at (n, k)");
    vp->add_option("n", vp_n)->required();
    vp->add_option("k", vp_k)->required();

    std::uint32_t hd_n = 0;
    std::uint64_t hd_d = 0;
    CLI::App* hd = app.add_subcommand("hit-dim", "hit rank and quotient dim in degree d");
    hd->add_option("n", hd_n)->required();
    hd->add_option("d", hd_d)->required();

    std::string sf_kind;
    std::uint64_t sf_lo = 0, sf_hi = 0;
    CLI::App* sf = app.add_subcommand("scan-family", "certify counterexample families");
    sf->add_option("kind", sf_kind, "nm4 (range of r) or nm3 (range of n)")->required();
    sf->add_option("min", sf_lo)->required();
    sf->add_option("max", sf_hi)->required();

    std::uint32_t cq_n = 0;
    std::uint64_t cq_d = 0;
    CLI::App* cq = app.add_subcommand("classical-qdim",
                                      "classical hit quotient dimension via the y-side");
    cq->add_option("n", cq_n)->required();
    cq->add_option("d", cq_d)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (beta->parsed())
            return cmd_beta(cfg, beta_d);
        if (vp->parsed())
            return cmd_verify_parity(cfg, vp_n, vp_k);
        if (hd->parsed())
            return cmd_hit_dim(cfg, hd_n, hd_d);
        if (sf->parsed())
            return cmd_scan_family(cfg, sf_kind, sf_lo, sf_hi);
        if (cq->parsed())
            return cmd_classical_qdim(cfg, cq_n, cq_d);
    } catch (const mhl::ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResourceLimit;
    } catch (const mhl::InvalidArgs& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitUsage;
}
