#include "rpbis/cli.hpp"

#include <chrono>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "rpbis/bisim.hpp"
#include "rpbis/oracle.hpp"
#include "rpbis/parser.hpp"
#include "rpbis/rpt.hpp"
#include "rpbis/synth.hpp"

namespace rpbis::cli {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

} // namespace

bool Report::operator==(const Report& o) const {
    return verdict == o.verdict && formula == o.formula &&
           satisfied_by == o.satisfied_by && logic == o.logic && depth == o.depth &&
           minimal_level == o.minimal_level && timings_ms == o.timings_ms;
}

std::string report_to_json(const Report& r) {
    nlohmann::json j;
    j["schema"] = "rpbis.report/1";
    j["verdict"] = r.verdict;
    if (r.formula) j["formula"] = *r.formula;
    if (r.satisfied_by) j["satisfied_by"] = *r.satisfied_by;
    if (!r.logic.empty()) j["logic"] = r.logic;
    j["depth"] = r.depth;
    j["minimal_level"] = r.minimal_level;
    j["timings_ms"] = r.timings_ms;
    return j.dump(2);
}

Report report_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.value("schema", "") != "rpbis.report/1")
        throw Error(ErrKind::SyntaxError, "unknown report schema");
    Report r;
    r.verdict = j.at("verdict").get<std::string>();
    if (j.contains("formula")) r.formula = j["formula"].get<std::string>();
    if (j.contains("satisfied_by")) r.satisfied_by = j["satisfied_by"].get<std::string>();
    r.logic = j.value("logic", "");
    r.depth = j.at("depth").get<unsigned>();
    r.minimal_level = j.at("minimal_level").get<unsigned>();
    r.timings_ms = j.at("timings_ms").get<std::map<std::string, double>>();
    return r;
}

std::string report_to_text(const Report& r) {
    std::ostringstream out;
    out << r.verdict << "\n";
    if (r.formula) {
        out << "formula: " << *r.formula << "\n";
        out << "satisfied by: " << *r.satisfied_by << "\n";
        out << "depth: " << r.depth << ", minimal level: " << r.minimal_level << "\n";
    }
    return out.str();
}

Rplts load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrKind::IoError, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_system(buf.str());
}

Report cmd_bisim(const std::string& path, const std::string& s1, const std::string& s2) {
    Report r;
    auto t0 = Clock::now();
    Rplts sys = load_system(path);
    r.timings_ms["parse"] = ms_since(t0);
    auto t1 = Clock::now();
    bool eq = bisimilar(sys, s1, s2);
    r.timings_ms["analysis"] = ms_since(t1);
    r.verdict = eq ? "bisimilar" : "distinguished";
    return r;
}

Report cmd_distinguish(const std::string& path, const std::string& s1,
                       const std::string& s2, LogicId logic, bool decimal) {
    Report r;
    r.logic = logic_name(logic);
    auto t0 = Clock::now();
    Rplts sys = load_system(path);
    r.timings_ms["parse"] = ms_since(t0);
    auto t1 = Clock::now();
    auto res = distinguish_states(sys, s1, s2, logic);
    r.timings_ms["synthesis"] = ms_since(t1);
    if (!res) {
        r.verdict = "bisimilar";
        return r;
    }
    r.verdict = "distinguished";
    r.formula = render_formula(res->formula, decimal);
    r.satisfied_by = res->satisfied_by_first ? s1 : s2;
    r.depth = res->formula->depth;
    r.minimal_level = res->level;
    return r;
}

bool cmd_check(const std::string& path, const std::string& state,
               const std::string& formula_text) {
    Rplts sys = load_system(path);
    // Arguments ending in .pml name a formula file; anything else is
    // inline formula text.
    std::string text = formula_text;
    if (text.size() > 4 && text.compare(text.size() - 4, 4, ".pml") == 0) {
        std::ifstream in(text);
        if (!in) throw Error(ErrKind::IoError, "cannot open '" + text + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    FormulaPtr f = parse_formula(text);
    return sat_state(sys, sys.state_or_throw(state), f);
}

std::string cmd_canon(const std::string& path, const std::string& state,
                      unsigned depth, bool dot) {
    Rplts sys = load_system(path);
    TreeArena arena(sys);
    Rpt t = arena.unfold(sys, sys.state_or_throw(state), depth);
    return dot ? render_tree_dot(t, arena.actions()) : render_tree(t, arena.actions());
}

namespace {

// One selftest case: generate a system, then cross-check every pipeline
// stage against its independent counterpart.
std::optional<std::string> run_case(std::uint64_t seed) {
    GenParams gp;
    gp.seed = seed;
    Rplts sys = random_rplts(gp);

    // Parser round trip.
    Rplts reparsed = parse_system(render_system(sys));
    if (render_system(reparsed) != render_system(sys))
        return "system render/parse round trip differs";

    Partition part = bisim_partition(sys);

    // Final-semantics agreement: same block iff equal canonical trees.
    std::uint32_t n = sys.num_states();
    for (StateId a = 0; a < n; ++a) {
        for (StateId b = a + 1; b < n; ++b) {
            bool blocks_eq = part.block_of[a] == part.block_of[b];
            if (blocks_eq != semantic_eq(sys, a, b))
                return "partition refinement disagrees with tree semantics for " +
                       sys.state_name(a) + "," + sys.state_name(b);
        }
    }

    // Synthesis: distinguishing formulas exist exactly for non-bisimilar
    // pairs, stay in their fragment, respect the depth bound, and separate
    // the states under sat_state with the reported orientation.
    for (LogicId logic : {LogicId::NegAnd, LogicId::NegOr, LogicId::And, LogicId::Or}) {
        for (StateId a = 0; a < n; ++a) {
            for (StateId b = a + 1; b < n; ++b) {
                auto res = distinguish_states(sys, a, b, logic);
                bool eq = part.block_of[a] == part.block_of[b];
                if (eq != !res.has_value())
                    return std::string("distinguish/bisimilar mismatch under ") +
                           logic_name(logic);
                if (!res) continue;
                if (!in_fragment(res->formula, logic))
                    return std::string("formula outside fragment ") + logic_name(logic);
                if (res->formula->depth > res->level)
                    return "formula deeper than the minimal differing level";
                bool sa = sat_state(sys, a, res->formula);
                bool sb = sat_state(sys, b, res->formula);
                if (sa == sb || sa != res->satisfied_by_first)
                    return "formula does not separate the states as reported";
            }
        }
    }
    return std::nullopt;
}

} // namespace

unsigned run_selftest(const SelftestParams& params, std::ostream& log) {
    unsigned threads = params.threads
                           ? params.threads
                           : std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::optional<std::string>> failures(params.cases);
    std::mutex next_mutex;
    unsigned next = 0;

    auto worker = [&]() {
        while (true) {
            unsigned i;
            {
                std::lock_guard<std::mutex> lock(next_mutex);
                if (next >= params.cases) return;
                i = next++;
            }
            std::uint64_t case_seed = params.seed + 0x9e3779b97f4a7c15ULL * (i + 1);
            try {
                failures[i] = run_case(case_seed);
            } catch (const std::exception& e) {
                failures[i] = std::string("exception: ") + e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    unsigned failed = 0;
    for (unsigned i = 0; i < params.cases; ++i) {
        if (!failures[i]) continue;
        ++failed;
        log << "selftest case " << i << " (seed " << params.seed << "): "
            << *failures[i] << "\n";
    }
    if (failed == 0)
        log << "selftest: " << params.cases << " cases passed (seed "
            << params.seed << ")\n";
    return failed;
}

} // namespace rpbis::cli
