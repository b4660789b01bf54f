#include "elkg/cli.hpp"

#include <chrono>
#include <filesystem>
#include <optional>
#include <ostream>
#include <unordered_set>

#include <CLI11.hpp>

#include "elkg/convert.hpp"
#include "elkg/error.hpp"
#include "elkg/ingest.hpp"
#include "elkg/perspective.hpp"
#include "elkg/query.hpp"
#include "elkg/trace_index.hpp"
#include "elkg/turtle.hpp"

namespace elkg {

namespace {

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunStats {
    std::vector<std::pair<std::string, double>> timings; // phase -> ms
    std::vector<std::pair<std::string, std::size_t>> counts;

    template <class F>
    auto time(const std::string& phase, F&& f) {
        auto t0 = std::chrono::steady_clock::now();
        auto finish = [&] {
            std::chrono::duration<double, std::milli> d = std::chrono::steady_clock::now() - t0;
            timings.emplace_back(phase, d.count());
        };
        if constexpr (std::is_void_v<decltype(f())>) {
            f();
            finish();
        } else {
            auto r = f();
            finish();
            return r;
        }
    }

    void print(std::ostream& err) const {
        for (const auto& [phase, ms] : timings) err << "time." << phase << "_ms: " << ms << '\n';
        for (const auto& [what, n] : counts) err << "count." << what << ": " << n << '\n';
    }
};

void emit(const std::string& path, const std::string& payload, std::ostream& out) {
    if (path == "-") {
        out << payload;
        out.flush();
    } else {
        write_file(path, payload);
    }
}

std::string format_of(const std::string& input, const std::string& flag) {
    if (!flag.empty()) {
        if (flag == "xes" || flag == "ocel2") return flag;
        throw UsageError("unknown format '" + flag + "' (expected xes or ocel2)");
    }
    std::string ext = std::filesystem::path(input).extension().string();
    for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == ".xes") return "xes";
    if (ext == ".json" || ext == ".jsonocel") return "ocel2";
    throw UsageError("cannot infer the format of '" + input + "'; pass --format xes|ocel2");
}

IriScheme scheme_for(const std::string& input, const std::string& base) {
    return base.empty() ? IriScheme::from_file_name(input) : IriScheme::with_base(base, input);
}

std::size_t count_traces(const Graph& g) {
    auto type = g.lookup(Term::resource(vocab::rdf_type));
    auto trace = g.lookup(Term::resource(vocab::tr_trace));
    return type && trace ? g.with_predicate(*type, *trace).size() : 0;
}

int cmd_convert(const std::string& input, const std::string& fmt, const std::string& base, const std::string& output,
                bool stats, std::ostream& out, std::ostream& err) {
    RunStats rs;
    std::string format = format_of(input, fmt);
    std::string text = rs.time("read", [&] { return read_file(input); });
    IriScheme scheme = scheme_for(input, base);
    Graph g;
    if (format == "xes") {
        CaseLog log = rs.time("parse", [&] { return parse_xes(text); });
        g = rs.time("convert", [&] { return ccel_to_elkg(log, scheme); });
        rs.counts.emplace_back("traces", log.traces.size());
        rs.counts.emplace_back("events", log.event_count());
    } else {
        OcelLog log = rs.time("parse", [&] { return parse_ocel2_json(text); });
        g = rs.time("convert", [&] { return ocel2_to_elkg(log, scheme); });
        rs.counts.emplace_back("events", log.events.size());
        rs.counts.emplace_back("objects", log.objects.size());
        rs.counts.emplace_back("e2o", log.e2o_count());
        rs.counts.emplace_back("o2o", log.o2o_count());
    }
    std::string ttl = rs.time("serialize", [&] { return serialize_turtle(g); });
    emit(output, ttl, out);
    rs.counts.emplace_back("triples", g.size());
    if (stats) rs.print(err);
    return exit_ok;
}

int cmd_flatten(const std::string& input, const std::string& perspective, const std::string& base,
                const std::string& output, bool stats, std::ostream& out, std::ostream& err) {
    RunStats rs;
    std::string text = rs.time("read", [&] { return read_file(input); });
    std::string ptext = read_file(perspective);
    Perspective p = parse_perspective_json(ptext);
    OcelLog log = rs.time("parse", [&] { return parse_ocel2_json(text); });
    FlattenResult r = rs.time("extract", [&] { return flatten(log, p, scheme_for(input, base)); });
    if (r.instances == 0)
        err << "warning: no objects of type '" << p.start_object_type << "'; no traces produced\n";
    std::string ttl = rs.time("serialize", [&] { return serialize_turtle(r.graph); });
    emit(output, ttl, out);
    rs.counts.emplace_back("instances", r.instances);
    rs.counts.emplace_back("traces", count_traces(r.graph));
    rs.counts.emplace_back("empty_traces", r.empty_traces);
    rs.counts.emplace_back("events", log.events.size());
    rs.counts.emplace_back("triples", r.graph.size());
    if (stats) rs.print(err);
    return exit_ok;
}

int cmd_query(const std::string& input, const std::string& query_file, const std::string& format, bool stats,
              std::ostream& out, std::ostream& err) {
    RunStats rs;
    std::string text = read_file(input);
    std::string qtext = read_file(query_file);
    QueryAst ast = rs.time("parse", [&] { return parse_query(qtext); });
    TraceIndex idx = rs.time("load", [&] { return TraceIndex::build(parse_turtle(text)); });
    ResultSet r = rs.time("query", [&] { return evaluate(ast, idx); });
    for (const auto& w : ast.warnings) err << "warning: " << w << '\n';
    for (const auto& w : r.warnings) err << "warning: " << w << '\n';
    out << serialize_results(r, format == "json" ? ResultFormat::BindingsJson : ResultFormat::Ids);
    out.flush();
    rs.counts.emplace_back("traces", idx.size());
    rs.counts.emplace_back("results", r.traces.size());
    rs.counts.emplace_back("rows", r.rows.size());
    if (stats) rs.print(err);
    return exit_ok;
}

int cmd_stats(const std::string& input, std::ostream& out) {
    Graph g = parse_turtle(read_file(input));
    std::size_t events = 0, activities = 0;
    auto in = g.lookup(Term::resource(vocab::tr_in));
    auto act = g.lookup(Term::resource(vocab::tr_activity));
    std::unordered_set<TermId> ev, acts;
    if (in)
        for (const auto& t : g.with_predicate(*in)) ev.insert(t.s);
    if (act)
        for (const auto& t : g.with_predicate(*act)) {
            ev.insert(t.s);
            acts.insert(t.o);
        }
    events = ev.size();
    activities = acts.size();
    out << "triples: " << g.size() << '\n'
        << "traces: " << count_traces(g) << '\n'
        << "events: " << events << '\n'
        << "activities: " << activities << '\n';
    out.flush();
    return exit_ok;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Event log knowledge graphs: convert, flatten, query"};
    app.require_subcommand(1);

    std::string input, format, base, output = "-", perspective, query_file, result_format = "ids";
    bool stats = false;

    auto* convert = app.add_subcommand("convert", "Convert an XES or OCEL2 JSON log to Turtle");
    convert->add_option("input", input, "Input log (- for stdin)")->required();
    convert->add_option("--format", format, "xes or ocel2 (default: from the extension)");
    convert->add_option("--base-iri", base, "Namespace for minted IRIs");
    convert->add_option("-o,--output", output, "Output Turtle file (default: stdout)");
    convert->add_flag("--stats", stats, "Print timings and counts to stderr");

    auto* fl = app.add_subcommand("flatten", "Materialize perspective traces over an OCEL2 log");
    fl->add_option("input", input, "Input OCEL2 JSON log")->required();
    fl->add_option("-p,--perspective", perspective, "Perspective JSON file")->required();
    fl->add_option("--base-iri", base, "Namespace for minted IRIs");
    fl->add_option("-o,--output", output, "Output Turtle file (default: stdout)");
    fl->add_flag("--stats", stats, "Print timings and counts to stderr");

    auto* q = app.add_subcommand("query", "Run a trace query over an ELKG");
    q->add_option("graph", input, "ELKG Turtle file")->required();
    q->add_option("-q,--query", query_file, "Query file")->required();
    q->add_option("--output", result_format, "ids or json")->check(CLI::IsMember({"ids", "json"}));
    q->add_flag("--stats", stats, "Print timings and counts to stderr");

    auto* st = app.add_subcommand("stats", "Count triples, traces, events and activities");
    st->add_option("graph", input, "ELKG Turtle file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*convert) return cmd_convert(input, format, base, output, stats, out, err);
        if (*fl) return cmd_flatten(input, perspective, base, output, stats, out, err);
        if (*q) return cmd_query(input, query_file, result_format, stats, out, err);
        return cmd_stats(input, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return exit_input;
    } catch (const ValidationError& e) {
        err << "invalid input: " << e.what() << '\n';
        return exit_input;
    } catch (const StructuralError& e) {
        err << "malformed graph: " << e.what() << '\n';
        return exit_input;
    }
}

} // namespace elkg
