#include "harpack/analysis.hpp"
#include "harpack/packer.hpp"
#include "harpack/svg.hpp"
#include "harpack/verifier.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

using namespace harpack;

namespace {

// Exit codes: 0 success, 2 NoFit, 4 bad input, 3 verification failure.
constexpr int kExitNoFit = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitBadInput = 4;

// Flag values accept plain integers or scientific notation ("1e11").
Index parse_index(const std::string& s) {
    auto q = Rational::parse(s);
    if (!q || q->den() != 1 || q->sign() < 0 || !q->num().fits_ulong_p())
        throw CLI::ValidationError(s + " is not a non-negative integer");
    return mpz_get_ui(q->num().get_mpz_t());
}

Rational parse_rational(const std::string& s) {
    auto q = Rational::parse(s);
    if (!q) throw CLI::ValidationError("cannot parse number: " + s);
    return *q;
}

const std::map<std::string, SplitPolicy> kSplitNames = {
    {"A", SplitPolicy::VerticalCut},        {"B", SplitPolicy::HorizontalCut},
    {"longer", SplitPolicy::LongerLeftover}, {"shorter", SplitPolicy::ShorterLeftover},
    {"maxchild", SplitPolicy::MaxChildArea}, {"minchild", SplitPolicy::MinChildArea},
    {"shortcut", SplitPolicy::ShorterCut},   {"longcut", SplitPolicy::LongerCut}};
const std::map<std::string, OrientPolicy> kOrientNames = {
    {"unrot", OrientPolicy::UnrotatedFirst},
    {"rot", OrientPolicy::RotatedFirst},
    {"align-long", OrientPolicy::AlignLong},
    {"align-short", OrientPolicy::AlignShort}};
const std::map<std::string, StoreKey> kOrderNames = {{"minside", StoreKey::MinSide},
                                                     {"area", StoreKey::Area}};
const std::map<std::string, NumericMode> kModeNames = {{"float", NumericMode::Float},
                                                       {"exact", NumericMode::Exact}};

template <class S>
int run_pack(const PackerConfig& cfg, const std::string& resume_from) {
    Packer<S> packer(cfg);
    if (!resume_from.empty()) packer.resume(resume_from);
    auto result = packer.run();
    if (!cfg.checkpoint_path.empty() && cfg.checkpoint_every == 0)
        packer.save_checkpoint(cfg.checkpoint_path);

    const auto& fin = result.final_snapshot;
    std::printf("packed           %llu\n", (unsigned long long)fin.n);
    std::printf("ratio            %.6f\n", ScalarOps<S>::to_double(fin.ratio));
    std::printf("largest box      %.17g x %.17g\n", ScalarOps<S>::to_double(fin.largest_w),
                ScalarOps<S>::to_double(fin.largest_h));
    std::printf("remaining area   %.17g\n", ScalarOps<S>::to_double(fin.remaining));
    std::printf("empty boxes      %llu\n", (unsigned long long)fin.box_count);
    std::printf("wall seconds     %.2f\n", fin.wall_seconds);
    if (result.status == PackingResult<S>::Status::NoFit) {
        std::printf("status           NOFIT at rectangle %llu\n",
                    (unsigned long long)result.nofit_index);
        return kExitNoFit;
    }
    std::printf("status           completed\n");
    return 0;
}

template <class S>
int run_verify(const std::string& placements_path, const std::string& boxes_path,
               Index brute_max, const Rational& side_r) {
    auto placements = read_placements<S>(placements_path);
    ValidityReport<S> rep;
    check_no_overlap(placements, rep);
    S side;
    if constexpr (std::is_same_v<S, double>)
        side = side_r.to_double();
    else
        side = side_r;
    check_containment(placements, rep, side);
    if (placements.size() <= brute_max) {
        auto brute = count_overlaps_bruteforce(placements);
        if (brute != rep.overlap_total) {
            std::printf("INTERNAL: sweep (%llu) vs brute force (%llu) disagree\n",
                        (unsigned long long)rep.overlap_total, (unsigned long long)brute);
            return kExitInvalid;
        }
    }
    if (!boxes_path.empty()) {
        auto boxes = read_boxes<S>(boxes_path);
        rep.conservation_residual = check_conservation(placements, boxes);
        rep.conservation_checked = true;
    }

    std::printf("placements            %llu\n", (unsigned long long)rep.n_checked);
    std::printf("overlap violations    %llu\n", (unsigned long long)rep.overlap_total);
    for (auto& [a, b] : rep.overlap_violations)
        std::printf("  overlap: %llu %llu\n", (unsigned long long)a, (unsigned long long)b);
    std::printf("containment violations %llu\n", (unsigned long long)rep.containment_total);
    for (auto idx : rep.containment_violations)
        std::printf("  outside: %llu\n", (unsigned long long)idx);
    if (rep.conservation_checked)
        std::printf("conservation residual %s\n",
                    ScalarOps<S>::format(rep.conservation_residual).c_str());
    bool ok = rep.overlap_total == 0 && rep.containment_total == 0;
    if (rep.conservation_checked) {
        if constexpr (std::is_same_v<S, Rational>)
            ok = ok && rep.conservation_residual == Rational();
        else
            ok = ok && std::abs(rep.conservation_residual) <= 1e-11;
    }
    std::printf("verdict               %s\n", ok ? "valid" : "INVALID");
    return ok ? 0 : kExitInvalid;
}

int run_bound(Index n, int rows, const std::string& layout_out) {
    auto layout = strip_layout(n, rows);
    std::printf("n                 %llu\n", (unsigned long long)n);
    std::printf("container side    %s = %.10f\n", container_side(n).str().c_str(),
                container_side(n).to_double());
    std::printf("area bound        %.12f  (1 + 2/n*(ln2 + 1/2n))\n",
                strip_area_bound(n).to_double());
    std::printf("strip width sum   %.6e of limit %.6e (rows %d)\n",
                layout.total_width.to_double(), layout.total_width_limit.to_double(),
                rows);
    bool all_ok = true;
    for (const auto& row : layout.rows) {
        std::printf("row %2d  P_%llu..P_%llu  width %.3e", row.row,
                    (unsigned long long)row.first, (unsigned long long)row.last,
                    row.width.to_double());
        if (row.exact_length) {
            std::printf("  length %.9f  %s", row.exact_length->to_double(),
                        row.length_below_bound && row.bound_below_one ? "ok"
                                                                      : "VIOLATION");
            all_ok = all_ok && row.length_below_bound && row.bound_below_one;
        } else {
            std::printf("  length (not materialized)  bound<1 %s",
                        row.bound_below_one ? "ok" : "VIOLATION");
            all_ok = all_ok && row.bound_below_one;
        }
        std::printf("\n");
    }
    if (!layout_out.empty()) {
        auto glued = glued_layout<Rational>(n, rows);
        std::ofstream out(layout_out, std::ios::binary | std::ios::trunc);
        out << kPlacementHeader << '\n';
        for (const auto& p : glued) out << placement_row(p);
        std::printf("glued layout      %zu rectangles -> %s\n", glued.size(),
                    layout_out.c_str());
    }
    return all_ok ? 0 : kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Greedy packing of the 1/i x 1/(i+1) rectangle sequence into the "
                 "unit square, with exact verification and the analytic bounds"};
    app.require_subcommand(1);
    // "continue --h" is a documented flag; keep help long-form only.
    app.set_help_flag("--help", "print help");

    // ---- pack ----
    auto* pack = app.add_subcommand("pack", "run the packing engine");
    std::string n_str = "1000", mode = "float", split = "longer",
                orient = "align-short", order = "minside";
    bool no_rotate = false, prune = false, no_placements = false;
    std::string out = "placements.csv", snapshots_out, boxes_out, checkpoint,
                resume_from, snapshots_str;
    Index checkpoint_every = 0;
    pack->add_option("--n", n_str, "number of rectangles")->capture_default_str();
    pack->add_option("--mode", mode, "float|exact")->capture_default_str();
    pack->add_option("--split", split, "A|B|longer|shorter|maxchild|minchild|shortcut|longcut")
        ->capture_default_str();
    pack->add_option("--orient", orient, "unrot|rot|align-long|align-short")
        ->capture_default_str();
    pack->add_option("--order", order, "minside|area")->capture_default_str();
    pack->add_flag("--no-rotate", no_rotate, "forbid 90-degree rotation");
    pack->add_flag("--prune", prune, "drop boxes too small for any remaining rectangle");
    pack->add_option("--out", out, "placement stream path")->capture_default_str();
    pack->add_flag("--no-placements", no_placements, "skip the placement stream");
    pack->add_option("--snapshots-out", snapshots_out, "ratio series CSV path");
    pack->add_option("--snapshots", snapshots_str,
                     "comma-separated snapshot n values (default: powers of ten)");
    pack->add_option("--boxes-out", boxes_out, "final empty-box dump path");
    pack->add_option("--checkpoint", checkpoint, "checkpoint file path");
    pack->add_option("--checkpoint-every", checkpoint_every,
                     "checkpoint every k placements (0: once at end)");
    pack->add_option("--resume", resume_from, "resume from checkpoint file");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "certify a placement stream");
    std::string v_placements, v_boxes, v_side = "1";
    Index brute_max = 2000;
    verify->add_option("--placements", v_placements, "placement stream")->required();
    verify->add_option("--boxes", v_boxes, "empty-box dump (enables conservation check)");
    verify->add_option("--brute-force-max", brute_max,
                       "cross-check sweep against O(n^2) up to this count")
        ->capture_default_str();
    verify->add_option("--side", v_side, "container side length (decimal or p/q)")
        ->capture_default_str();

    // ---- stats ----
    auto* stats = app.add_subcommand("stats", "re-emit the ratio series of a checkpoint");
    std::string s_in, s_csv;
    stats->add_option("--in", s_in, "checkpoint file")->required();
    stats->add_option("--csv", s_csv, "output CSV (default stdout)");

    // ---- bound ----
    auto* bound = app.add_subcommand("bound", "strip construction and analytic bounds");
    std::string b_n = "1000", b_layout;
    int b_rows = 40;
    bound->add_option("--n", b_n, "strip construction parameter (>= 1000)")
        ->capture_default_str();
    bound->add_option("--rows", b_rows, "rows to materialize")->capture_default_str();
    bound->add_option("--emit-layout", b_layout, "write glued-strip placements here");

    // ---- continue ----
    auto* cont = app.add_subcommand(
        "continue", "grid lower bound for continuing a packing into an empty box");
    std::string c_w, c_h, c_n0;
    cont->add_option("--w", c_w, "box width (decimal or p/q)")->required();
    cont->add_option("--h", c_h, "box height (decimal or p/q)")->required();
    cont->add_option("--n0", c_n0, "first rectangle index to continue from")->required();

    // ---- render ----
    auto* render = app.add_subcommand("render", "render a placement stream as SVG");
    std::string r_in, r_svg = "packing.svg", r_side = "1";
    Index r_n = 0;
    render->add_option("--in", r_in, "placement stream")->required();
    render->add_option("--n", r_n, "render only the first n placements (0: all)");
    render->add_option("--svg", r_svg, "output SVG path")->capture_default_str();
    render->add_option("--side", r_side, "container side length")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*pack) {
            PackerConfig cfg;
            cfg.n_target = parse_index(n_str);
            if (cfg.n_target < 1) throw CLI::ValidationError("--n must be >= 1");
            cfg.mode = kModeNames.at(mode);
            cfg.split_policy = kSplitNames.at(split);
            cfg.orient = kOrientNames.at(orient);
            cfg.box_order = kOrderNames.at(order);
            cfg.allow_rotation = !no_rotate;
            cfg.prune = prune;
            cfg.emit_placements = !no_placements;
            cfg.placements_path = no_placements ? "" : out;
            cfg.snapshots_path = snapshots_out;
            cfg.boxes_path = boxes_out;
            cfg.checkpoint_path = checkpoint;
            cfg.checkpoint_every = checkpoint_every;
            if (!snapshots_str.empty()) {
                std::istringstream iss(snapshots_str);
                std::string tok;
                while (std::getline(iss, tok, ','))
                    cfg.snapshot_schedule.push_back(parse_index(tok));
            }
            return cfg.mode == NumericMode::Float
                       ? run_pack<double>(cfg, resume_from)
                       : run_pack<Rational>(cfg, resume_from);
        }
        if (*verify) {
            auto side = parse_rational(v_side);
            return detect_stream_mode(v_placements) == NumericMode::Float
                       ? run_verify<double>(v_placements, v_boxes, brute_max, side)
                       : run_verify<Rational>(v_placements, v_boxes, brute_max, side);
        }
        if (*stats) {
            std::string csv = checkpoint_ratio_series_csv(s_in);
            if (s_csv.empty()) {
                std::fputs(csv.c_str(), stdout);
            } else {
                std::ofstream f(s_csv, std::ios::binary | std::ios::trunc);
                f << csv;
            }
            return 0;
        }
        if (*bound) return run_bound(parse_index(b_n), b_rows, b_layout);
        if (*cont) {
            Index n0 = parse_index(c_n0);
            auto count = grid_lower_bound(parse_rational(c_w), parse_rational(c_h), n0);
            mpz_class total = count + mpz_class(n0 > 0 ? n0 - 1 : 0);
            std::printf("grid cells        %s\n", count.get_str().c_str());
            std::printf("packed through    %s  (rectangles 1..%llu plus the grid)\n",
                        total.get_str().c_str(), (unsigned long long)(n0 - 1));
            auto eps = epsilon_report(mpz_get_ui(total.get_mpz_t()));
            std::printf("delta             %s\n", eps.delta.str().c_str());
            std::printf("epsilon           %.6e  (side %.17g)\n", eps.epsilon.to_double(),
                        eps.side.to_double());
            return 0;
        }
        if (*render) {
            auto side = parse_rational(r_side);
            std::vector<Placement<double>> ps;
            if (detect_stream_mode(r_in) == NumericMode::Float)
                ps = read_placements<double>(r_in);
            else
                ps = to_float_placements(read_placements<Rational>(r_in));
            if (r_n && ps.size() > r_n) ps.resize(r_n);
            std::ofstream svg(r_svg, std::ios::binary | std::ios::trunc);
            render_svg(svg, ps, side.to_double());
            std::printf("wrote %zu rectangles to %s\n", ps.size(), r_svg.c_str());
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadInput;
    } catch (const std::out_of_range&) {
        std::fprintf(stderr, "error: unknown flag value\n");
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadInput;
    }
    return kExitBadInput;
}
