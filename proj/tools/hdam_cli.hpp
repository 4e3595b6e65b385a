#pragma once

// Command-line frontend. run() takes the arguments without the program
// name, writes artifacts and reports to out, diagnostics to err, and
// returns the exit status.

#include "hdam/hdam.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace hdam::cli {

enum Status : int {
    ok = 0,
    negative = 1, // a check or comparison came out false
    usage = 2,
    parse_failure = 3,
    invalid = 4,
    domain = 5,
    guard = 6,
    hypothesis = 7,
    contradiction = 8,
    io_failure = 9,
    internal = 10,
};

inline int status_of(ErrorKind k)
{
    switch (k) {
    case ErrorKind::argument: return usage;
    case ErrorKind::parse: return parse_failure;
    case ErrorKind::invalid_input: return invalid;
    case ErrorKind::domain_violation: return domain;
    case ErrorKind::termination_guard: return guard;
    case ErrorKind::hypothesis: return hypothesis;
    case ErrorKind::contradiction: return contradiction;
    case ErrorKind::io: return io_failure;
    }
    return internal;
}

enum class Verbosity { quiet, info, debug };

// HDAM_LOG=quiet|info|debug (or 0|1|2); info when unset
inline Verbosity verbosity_from_env()
{
    const char* v = std::getenv("HDAM_LOG");
    if (!v)
        return Verbosity::info;
    const std::string s(v);
    if (s == "quiet" || s == "0" || s == "off")
        return Verbosity::quiet;
    if (s == "debug" || s == "2")
        return Verbosity::debug;
    return Verbosity::info;
}

enum class FileKind { system, lts, hda };

inline const char* to_string(FileKind k)
{
    switch (k) {
    case FileKind::system: return "program";
    case FileKind::lts: return "transition system";
    case FileKind::hda: return "HDA";
    }
    return "?";
}

// by top-level keys: graphs, then relation, then dims
inline FileKind detect_kind(const Json& j)
{
    if (j.is_object()) {
        if (j.contains("graphs"))
            return FileKind::system;
        if (j.contains("relation"))
            return FileKind::lts;
        if (j.contains("dims"))
            return FileKind::hda;
    }
    throw Error(ErrorKind::parse, "not a program, transition system or HDA document");
}

struct Options {
    std::vector<std::string> inputs;
    std::string output;
    std::string ts;
    std::string policy = "realized";
    std::size_t max_dim = 0;
    bool has_max_dim = false;
    bool psi = false;
    bool json = false;
    bool eager = false;
};

class Runner {
public:
    Runner(std::ostream& out, std::ostream& err, Verbosity v) : out_(out), err_(err), verbosity_(v) {}

    int dispatch(const std::string& verb, const Options& o)
    {
        o_ = o;
        if (verb == "build-ts")
            return build_ts();
        if (verb == "build-hda")
            return build_hda();
        if (verb == "tensor")
            return tensor_verb();
        if (verb == "interleave")
            return interleave_verb();
        if (verb == "coproduct")
            return coproduct_verb();
        if (verb == "compose")
            return compose_verb();
        if (verb == "check")
            return check_verb();
        if (verb == "iso")
            return iso_verb();
        if (verb == "stats")
            return stats_verb();
        if (verb == "export")
            return export_verb();
        throw Error(ErrorKind::argument, "unknown verb " + verb);
    }

    // the file being read when an error escaped, if any
    [[nodiscard]] const std::string& context() const { return context_; }

private:
    struct Loaded {
        FileKind kind;
        Json doc;
    };

    Loaded load(const std::string& path)
    {
        context_ = path;
        Json j = parse_json(read_file(path));
        const FileKind k = detect_kind(j);
        return {k, std::move(j)};
    }

    void info(const std::string& s) const
    {
        if (verbosity_ != Verbosity::quiet)
            err_ << s << "\n";
    }

    void debug(const std::string& s) const
    {
        if (verbosity_ == Verbosity::debug)
            err_ << s << "\n";
    }

    RelationPolicy policy() const
    {
        return o_.policy == "process-order" ? RelationPolicy::process_order : RelationPolicy::realized;
    }

    std::optional<std::size_t> max_dim() const
    {
        return o_.has_max_dim ? std::optional<std::size_t>(o_.max_dim) : std::nullopt;
    }

    SystemModel model_system(const Json& doc)
    {
        const SharedVariableSystem sys = system_from_json(doc);
        SystemModel m = lts_model(sys, policy(), o_.eager ? Exploration::eager : Exploration::lazy);
        debug("explored " + std::to_string(m.graph.states.size()) + " states, "
              + std::to_string(m.graph.edges.size()) + " edges");
        names_.clear();
        for (Index v = 0; v < m.graph.states.size(); ++v)
            names_.push_back(state_name(sys, m.graph, v));
        return m;
    }

    LtsSystem as_lts(const std::string& path)
    {
        Loaded in = load(path);
        names_.clear();
        LtsSystem t = [&] {
            switch (in.kind) {
            case FileKind::system: return std::move(model_system(in.doc).lts);
            case FileKind::lts: return lts_from_json(in.doc);
            case FileKind::hda: break;
            }
            throw Error(ErrorKind::invalid_input, "expected a program or transition system, found an HDA");
        }();
        context_.clear();
        return t;
    }

    Hda model_of(const LtsSystem& t)
    {
        if (o_.psi) {
            Hda a = psi(t);
            info("psi: " + std::to_string(a.cells.count(2)) + " independence squares filled");
            return a;
        }
        std::vector<DimensionStat> log;
        ModelOptions opts;
        opts.log = &log;
        Hda a = hda_model(t, max_dim(), opts);
        for (const DimensionStat& s : log) {
            char ms[32];
            std::snprintf(ms, sizeof ms, "%.2f", s.millis);
            info("degree " + std::to_string(s.m) + ": " + std::to_string(s.cells) + " cells, " + ms + " ms");
        }
        return a;
    }

    // an HDA file as is; anything else through its model
    Hda as_hda(const std::string& path)
    {
        Loaded in = load(path);
        if (in.kind == FileKind::hda) {
            names_.clear();
            Hda a = hda_from_json(in.doc);
            context_.clear();
            return a;
        }
        const LtsSystem t = as_lts(path);
        return model_of(t);
    }

    Loaded expect(const std::string& path, std::initializer_list<FileKind> kinds)
    {
        Loaded in = load(path);
        for (FileKind k : kinds) {
            if (k == in.kind) {
                context_.clear();
                return in;
            }
        }
        throw Error(ErrorKind::invalid_input, std::string("unexpected ") + to_string(in.kind) + " document");
    }

    void emit(const std::string& text)
    {
        if (o_.output.empty()) {
            out_ << text;
            return;
        }
        context_ = o_.output;
        write_file(o_.output, text);
        context_.clear();
    }

    void emit(const Json& j) { emit(dump(j)); }

    int build_ts()
    {
        expect(o_.inputs[0], {FileKind::system});
        emit(to_json(as_lts(o_.inputs[0])));
        return ok;
    }

    int build_hda()
    {
        expect(o_.inputs[0], {FileKind::system, FileKind::lts});
        emit(to_json(model_of(as_lts(o_.inputs[0]))));
        return ok;
    }

    int tensor_verb()
    {
        const Hda a = hda_from_json(expect(o_.inputs[0], {FileKind::hda}).doc);
        const Hda b = hda_from_json(expect(o_.inputs[1], {FileKind::hda}).doc);
        context_.clear();
        emit(to_json(tensor_hda(a, b)));
        return ok;
    }

    int interleave_verb()
    {
        expect(o_.inputs[0], {FileKind::system, FileKind::lts});
        expect(o_.inputs[1], {FileKind::system, FileKind::lts});
        const LtsSystem s = as_lts(o_.inputs[0]);
        const LtsSystem t = as_lts(o_.inputs[1]);
        emit(to_json(interleave(s, t)));
        return ok;
    }

    int coproduct_verb()
    {
        const Loaded a = load(o_.inputs[0]);
        const Loaded b = load(o_.inputs[1]);
        if ((a.kind == FileKind::hda) != (b.kind == FileKind::hda))
            throw Error(ErrorKind::invalid_input, "coproduct needs two HDAs or two transition systems");
        if (a.kind == FileKind::hda) {
            const Hda x = hda_from_json(a.doc);
            const Hda y = hda_from_json(b.doc);
            context_.clear();
            emit(to_json(coproduct_hda(x, y)));
            return ok;
        }
        const LtsSystem s = as_lts(o_.inputs[0]);
        const LtsSystem t = as_lts(o_.inputs[1]);
        emit(to_json(coproduct_lts(s, t)));
        return ok;
    }

    int compose_verb()
    {
        const SharedVariableSystem a = system_from_json(expect(o_.inputs[0], {FileKind::system}).doc);
        const SharedVariableSystem b = system_from_json(expect(o_.inputs[1], {FileKind::system}).doc);
        context_.clear();
        SharedVariableSystem c = parallel_compose(a, b);
        validate_system(c);
        emit(to_json(c));
        return ok;
    }

    static Json edge_json(const EdgePredicate& p)
    {
        Json j{{"holds", p.holds}};
        if (p.witness)
            j["witness"] = Json::array({p.witness->first, p.witness->second});
        return j;
    }

    static Json relation_json(const RelationPredicate& p)
    {
        Json j{{"holds", p.holds}};
        if (p.witness)
            j["witness"] = Json::array({to_json(p.witness->first), to_json(p.witness->second)});
        return j;
    }

    static std::string edge_text(const EdgePredicate& p, const char* what)
    {
        if (p.holds)
            return "yes";
        return "no (edges " + std::to_string(p.witness->first) + " and " + std::to_string(p.witness->second)
               + " " + what + ")";
    }

    static std::string relation_text(const RelationPredicate& p)
    {
        if (p.holds)
            return "yes";
        return "no (" + to_string(p.witness->first) + " and " + to_string(p.witness->second) + ")";
    }

    int check_verb()
    {
        const Loaded in = load(o_.inputs[0]);
        context_.clear();
        std::optional<LtsSystem> t;
        std::optional<bool> graphs_deterministic;
        Hda a;
        if (in.kind == FileKind::hda) {
            a = as_hda(o_.inputs[0]);
            if (!o_.ts.empty())
                t = as_lts(o_.ts);
        } else {
            if (in.kind == FileKind::system) {
                const SharedVariableSystem sys = system_from_json(in.doc);
                graphs_deterministic = std::all_of(sys.graphs.begin(), sys.graphs.end(),
                                                   [](const ProgramGraph& g) { return is_deterministic(g); });
            }
            t = as_lts(o_.inputs[0]);
            a = model_of(*t);
        }

        const EdgePredicate ext = is_extensional(a);
        const EdgePredicate det = is_deterministic(a);
        Json j{{"extensional", edge_json(ext)}, {"deterministic", edge_json(det)}};
        std::string text = "extensional: " + edge_text(ext, "share start, end and label") + "\n"
                           + "deterministic: " + edge_text(det, "share start and label") + "\n";
        if (graphs_deterministic) {
            j["deterministic_graphs"] = *graphs_deterministic;
            text += std::string("deterministic program graphs: ") + (*graphs_deterministic ? "yes" : "no") + "\n";
        }
        bool verdict = ext.holds;
        if (t) {
            const RelationPredicate asym = is_asymmetric(t->relation());
            j["asymmetric"] = relation_json(asym);
            text += "asymmetric: " + relation_text(asym) + "\n";
            const HmReport r = check_hm(a, *t, max_dim());
            const std::pair<const char*, const Verdict*> conds[] = {
                {"HM1", &r.hm1}, {"HM2", &r.hm2}, {"HM3", &r.hm3}, {"HM4", &r.hm4}};
            Json hm = Json::object();
            for (const auto& [name, v] : conds) {
                hm[name] = Json{{"pass", v->pass}};
                if (!v->pass)
                    hm[name]["witness"] = v->witness;
                text += std::string(name) + ": " + (v->pass ? std::string("pass") : "FAIL: " + v->witness) + "\n";
            }
            if (r.hm4_family)
                hm["HM4"]["family"] = r.hm4_family->faces;
            j["hm"] = std::move(hm);
            j["model"] = r.ok();
            text += std::string("model: ") + (r.ok() ? "yes" : "no") + "\n";
            verdict = verdict && r.ok();
        }
        emit(o_.json ? dump(j) : text);
        return verdict ? ok : negative;
    }

    int iso_verb()
    {
        std::string ts = o_.ts;
        if (ts.empty()) {
            const bool is_hda = load(o_.inputs[0]).kind == FileKind::hda;
            context_.clear();
            if (is_hda)
                throw Error(ErrorKind::argument, "iso on HDA files needs --ts");
            ts = o_.inputs[0];
        }
        const Hda a = as_hda(o_.inputs[0]);
        const Hda b = as_hda(o_.inputs[1]);
        const LtsSystem t = as_lts(ts);
        Json j;
        std::string text;
        try {
            const HdaMorphism f = canonical_iso(a, b, t, max_dim());
            std::vector<std::size_t> sizes;
            for (const auto& level : f.cells)
                sizes.push_back(level.size());
            j = Json{{"isomorphic", true}, {"canonical", true}, {"cells", sizes}};
            text = "isomorphic (canonical)\n";
            for (std::size_t n = 0; n < sizes.size(); ++n)
                text += "degree " + std::to_string(n) + ": " + std::to_string(sizes[n]) + " cells matched\n";
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::hypothesis)
                throw;
            j = Json{{"isomorphic", false}, {"reason", e.what()}};
            text = std::string("not isomorphic: ") + e.what() + "\n";
            emit(o_.json ? dump(j) : text);
            return negative;
        }
        emit(o_.json ? dump(j) : text);
        return ok;
    }

    int stats_verb()
    {
        const Loaded in = load(o_.inputs[0]);
        context_.clear();
        std::optional<LtsSystem> t;
        Hda a;
        if (in.kind == FileKind::hda) {
            a = as_hda(o_.inputs[0]);
            if (!o_.ts.empty())
                t = as_lts(o_.ts);
        } else {
            t = as_lts(o_.inputs[0]);
            a = model_of(*t);
        }
        std::vector<std::size_t> f;
        for (std::size_t n = 0; n < a.cells.levels(); ++n)
            f.push_back(a.cells.count(n));
        while (f.size() > 1 && f.back() == 0)
            f.pop_back();
        std::int64_t euler = 0;
        for (std::size_t n = 0; n < f.size(); ++n)
            euler += (n % 2 ? -1 : 1) * static_cast<std::int64_t>(f[n]);
        std::string fv;
        for (std::size_t n : f)
            fv += (fv.empty() ? "" : ", ") + std::to_string(n);
        Json j{{"f_vector", f}, {"euler_characteristic", euler}, {"dimension", f.size() - 1},
               {"alphabet", a.alphabet.size()}};
        std::string text = "f-vector: (" + fv + ")\n" + "Euler characteristic: " + std::to_string(euler) + "\n"
                           + "dimension: " + std::to_string(f.size() - 1) + "\n"
                           + "alphabet size: " + std::to_string(a.alphabet.size()) + "\n";
        if (t) {
            j["relation"] = t->relation().size();
            text += "relation size: " + std::to_string(t->relation().size()) + "\n";
        }
        emit(o_.json ? dump(j) : text);
        return ok;
    }

    int export_verb()
    {
        const Hda a = as_hda(o_.inputs[0]);
        emit(to_dot(a, names_));
        return ok;
    }

    std::ostream& out_;
    std::ostream& err_;
    Verbosity verbosity_;
    Options o_;
    std::string context_;
    std::vector<std::string> names_; // state names of the last program read
};

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               Verbosity verbosity = verbosity_from_env())
{
    CLI::App app{"Higher-dimensional automata from shared-variable programs", "hdam"};
    app.require_subcommand(1);
    Options o;

    struct Verb {
        const char* name;
        const char* help;
        int arity;
    };
    const Verb verbs[] = {
        {"build-ts", "program -> transition system with independence relation", 1},
        {"build-hda", "program or transition system -> HDA model", 1},
        {"tensor", "tensor product of two HDAs", 2},
        {"interleave", "interleaving of two transition systems", 2},
        {"coproduct", "coproduct of two HDAs or two transition systems", 2},
        {"compose", "parallel composition of two programs", 2},
        {"check", "model conditions, extensionality, determinism, asymmetry", 1},
        {"iso", "canonical isomorphism between two models", 2},
        {"stats", "f-vector, Euler characteristic, relation size", 1},
        {"export", "Graphviz DOT of the 1-skeleton", 1},
    };
    static const std::vector<std::string> policies{"realized", "process-order"};
    for (const Verb& v : verbs) {
        CLI::App* sc = app.add_subcommand(v.name, v.help);
        sc->add_option("inputs", o.inputs, "input files")->required()->expected(v.arity);
        sc->add_option("-o,--output", o.output, "write the result to this file");
        sc->add_flag("--json", o.json, "machine-readable report");
        sc->add_option("--policy", o.policy, "relation of program models: realized or process-order")
            ->check(CLI::IsMember(policies));
        sc->add_flag("--eager", o.eager, "explore every state of a program, not only reachable ones");
        sc->add_flag_function("--lazy", [&o](std::int64_t) { o.eager = false; }, "explore reachable states only (default)");
        sc->add_option("--max-dim", o.max_dim, "highest degree of cubes to fill");
        sc->add_flag("--psi", o.psi, "fill independence squares only");
        sc->add_option("--ts", o.ts, "transition system the models refer to");
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return usage;
    }

    const CLI::App* chosen = app.get_subcommands().front();
    const std::string verb = chosen->get_name();
    o.has_max_dim = chosen->count("--max-dim") > 0;
    Runner r(out, err, verbosity);
    try {
        return r.dispatch(verb, o);
    } catch (const Error& e) {
        err << "hdam " << verb << ": " << to_string(e.kind()) << ": ";
        if (!r.context().empty())
            err << r.context() << ": ";
        err << e.what() << "\n";
        return status_of(e.kind());
    } catch (const std::exception& e) {
        err << "hdam " << verb << ": internal error: " << e.what() << "\n";
        return internal;
    }
}

} // namespace hdam::cli
