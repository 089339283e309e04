#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "trialg/io.hpp"
#include "trialg/oracle.hpp"

namespace trialg::cli {

using nlohmann::json;

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

constexpr int kOk = 0;           // success; predicates true
constexpr int kFalse = 1;        // predicate false
constexpr int kInputError = 2;   // bad file, bad syntax, bad arguments
constexpr int kCapExhausted = 3; // an UnknownAtCap reached the surface

namespace detail {

struct Session {
    SpecFile spec;
    RootContext ctx;
    std::optional<ExplicitGrading> basis;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline Session load_session(const std::string& path) {
    SpecFile spec = parse_spec(read_file(path));
    Session s{spec, make_root_context(spec.trinomial), std::nullopt};
    if (spec.explicit_grading)
        s.basis = validate_explicit_grading(s.ctx.fg, *spec.explicit_grading);
    return s;
}

inline long long to_ll(const Integer& x) { return x.convert_to<long long>(); }

inline json degree_json(const Session& s, const GroupElement& e) {
    if (s.basis) {
        json arr = json::array();
        for (const auto& c : s.basis->to_user(e)) arr.push_back(to_ll(c));
        return arr;
    }
    json j;
    j["free"] = json::array();
    for (const auto& c : e.free_part) j["free"].push_back(to_ll(c));
    j["torsion"] = json::array();
    for (const auto& c : e.torsion) j["torsion"].push_back(to_ll(c));
    return j;
}

inline json rational_json(const Rational& q) { return to_string(q); }

inline json spec_json(const Session& s, const ElementarySpec& spec) {
    const TrinomialData& t = s.ctx.t;
    json j;
    j["C"] = spec.C;
    j["type"] = spec.type == ElementarySpec::Type::I ? "I" : "II";
    if (spec.type == ElementarySpec::Type::II) j["i0"] = spec.i0;
    j["beta"] = {rational_json(spec.beta[0]), rational_json(spec.beta[1]),
                 rational_json(spec.beta[2])};
    json u = json::object();
    for (int k = 0; k < t.n(); ++k)
        if (spec.multiplier_u[k] != 0) u[generator_name(t, k)] = spec.multiplier_u[k];
    j["multiplier"] = {{"u", u}, {"m", spec.multiplier_m},
                       {"alpha", rational_json(spec.multiplier_alpha)}};
    return j;
}

inline json witness_json(const Session& s, const std::vector<int>& u) {
    json j = json::object();
    for (int k = 0; k < s.ctx.t.n(); ++k)
        if (u[k] != 0) j[generator_name(s.ctx.t, k)] = u[k];
    return j;
}

inline json basic_set_json(const Session& s, const BasicSet& set) {
    const TrinomialData& t = s.ctx.t;
    json j;
    j["pair"] = {generator_name(t, t.flat_index(set.first.first, set.first.second)),
                 generator_name(t, t.flat_index(set.second.first, set.second.second))};
    j["offset"] = degree_json(s, set.offset);
    return j;
}

inline long long parse_int_arg(const std::string& tok) {
    std::size_t used = 0;
    long long v;
    try {
        v = std::stoll(tok, &used);
    } catch (const std::exception&) {
        throw Error("expected an integer, got '" + tok + "'");
    }
    if (used != tok.size()) throw Error("expected an integer, got '" + tok + "'");
    return v;
}

// Degree coordinates in the active basis; torsion residues follow a ';'.
inline std::optional<GroupElement> parse_degree(const Session& s,
                                                const std::vector<std::string>& tokens) {
    std::vector<Integer> head, tail;
    bool after_sep = false;
    for (const auto& tok : tokens) {
        std::string cur;
        for (char ch : tok) {
            if (ch == ';') {
                if (!cur.empty()) (after_sep ? tail : head).emplace_back(parse_int_arg(cur));
                cur.clear();
                if (after_sep) throw Error("only one ';' separator is allowed");
                after_sep = true;
            } else {
                cur += ch;
            }
        }
        if (!cur.empty()) (after_sep ? tail : head).emplace_back(parse_int_arg(cur));
    }
    const GradingGroup& K = s.ctx.fg.group;
    if (s.basis) {
        if (after_sep) throw Error("torsion residues make no sense in an explicit basis");
        if (static_cast<int>(head.size()) != s.basis->dimension())
            throw Error("expected " + std::to_string(s.basis->dimension()) +
                        " degree coordinates");
        return s.basis->from_user(K, head);
    }
    if (static_cast<int>(head.size()) != K.free_rank())
        throw Error("expected " + std::to_string(K.free_rank()) + " free coordinates");
    if (static_cast<int>(tail.size()) > static_cast<int>(K.torsion_invariants().size()))
        throw Error("too many torsion residues");
    GroupElement e = K.zero();
    e.free_part = head;
    for (std::size_t k = 0; k < tail.size(); ++k)
        e.torsion[k] = mod_floor(tail[k], K.torsion_invariants()[k]);
    return e;
}

struct ParsedArgs {
    std::vector<std::string> positional;
    std::vector<std::string> degree;
    std::vector<std::string> box;
    bool count = false;
    bool list = false;
    bool csv = false;
    std::optional<int> cap;
    std::optional<int> samples;
    std::optional<int> nilpotency_cap;
    std::optional<unsigned> seed;
};

inline ParsedArgs parse_args(const std::vector<std::string>& args, std::size_t from) {
    ParsedArgs out;
    auto is_flag = [](const std::string& a) { return a.size() > 2 && a.rfind("--", 0) == 0; };
    for (std::size_t i = from; i < args.size(); ++i) {
        const std::string& a = args[i];
        auto collect = [&](std::vector<std::string>& into) {
            while (i + 1 < args.size() && !is_flag(args[i + 1])) into.push_back(args[++i]);
            if (into.empty()) throw Error("'" + a + "' needs at least one value");
        };
        auto value = [&]() {
            if (i + 1 >= args.size()) throw Error("'" + a + "' needs a value");
            return args[++i];
        };
        if (a == "--degree")
            collect(out.degree);
        else if (a == "--box")
            collect(out.box);
        else if (a == "--count")
            out.count = true;
        else if (a == "--list")
            out.list = true;
        else if (a == "--csv")
            out.csv = true;
        else if (a == "--cap")
            out.cap = static_cast<int>(parse_int_arg(value()));
        else if (a == "--samples")
            out.samples = static_cast<int>(parse_int_arg(value()));
        else if (a == "--nilpotency-cap")
            out.nilpotency_cap = static_cast<int>(parse_int_arg(value()));
        else if (a == "--seed")
            out.seed = static_cast<unsigned>(parse_int_arg(value()));
        else if (is_flag(a))
            throw Error("unknown option '" + a + "'");
        else
            out.positional.push_back(a);
    }
    return out;
}

inline std::string usage() {
    return "usage: trialg <command> <spec-file> [options]\n"
           "\n"
           "commands:\n"
           "  info <spec>                        grading group and generator degrees\n"
           "  elementary <spec> --count|--list   classes of elementary derivations\n"
           "  is-root <spec> --degree <coords>   decide root membership (exit 0/1)\n"
           "  witness <spec> --degree <coords>   derivation realizing a root\n"
           "  roots <spec> --box <lo hi>... [--csv]   all roots in a coordinate box\n"
           "  verify <spec> <derivation-file>    check a derivation given by images\n"
           "  oracle <spec> --degree <coords> [--cap N] [--samples N]\n"
           "         [--nilpotency-cap N] [--seed N]   brute-force space check\n"
           "\n"
           "Degree coordinates are read in the spec file's explicit grading when present,\n"
           "else in canonical coordinates with torsion residues after a ';'.\n";
}

inline int cmd_info(const Session& s, json& j) {
    const TrinomialData& t = s.ctx.t;
    const GradingGroup& K = s.ctx.fg.group;
    j["ambient_rank"] = K.ambient_rank();
    j["free_rank"] = K.free_rank();
    j["torsion"] = json::array();
    for (const auto& d : K.torsion_invariants()) j["torsion"].push_back(to_ll(d));
    j["basis"] = s.basis ? "explicit" : "canonical";
    j["generator_degrees"] = json::array();
    for (int k = 0; k < t.n(); ++k)
        j["generator_degrees"].push_back({{"generator", generator_name(t, k)},
                                          {"degree", degree_json(s, s.ctx.fg.generator_degrees[k])}});
    j["g_degree"] = degree_json(s, s.ctx.fg.g_degree);
    return kOk;
}

inline int cmd_elementary(const Session& s, const ParsedArgs& args, json& j) {
    if (args.count == args.list) throw Error("pass exactly one of --count or --list");
    auto classes = elementary_classes(s.ctx.t);
    if (args.count) {
        j["count"] = classes.size();
        return kOk;
    }
    const TrinomialData& t = s.ctx.t;
    j["count"] = classes.size();
    j["classes"] = json::array();
    for (const auto& cls : classes) {
        json c;
        c["C"] = cls.C;
        c["type"] = cls.type == ElementarySpec::Type::I ? "I" : "II";
        json images = json::object();
        if (cls.type == ElementarySpec::Type::I) {
            // beta stays a free parameter subject to b0 + b1 + b2 = 0
            for (int i = 0; i < 3; ++i) {
                Monomial mono(t.n());
                Integer scale = 1;
                for (int k = 0; k < 3; ++k) {
                    if (k == i) continue;
                    auto [pm, pc] = trialg::detail::block_partial(t, k, cls.C[k]);
                    mono = mono.times(pm);
                    scale *= pc;
                }
                std::string img = "b" + std::to_string(i);
                Polynomial p = Polynomial::from_monomial(mono, Rational(scale));
                img += " * " + to_string(p, t);
                images[generator_name(t, t.flat_index(i, cls.C[i]))] = img;
            }
        } else {
            c["i0"] = cls.i0;
            std::array<Rational, 3> beta{Rational(0), Rational(0), Rational(0)};
            int a = (cls.i0 == 0) ? 1 : 0;
            int b = (cls.i0 == 2) ? 1 : 2;
            beta[a] = 1;
            beta[b] = -1;
            Derivation d = elementary_derivation(t, cls.C, beta);
            for (int i : {a, b})
                images[generator_name(t, t.flat_index(i, cls.C[i]))] =
                    to_string(d.image(i, cls.C[i]), t);
        }
        c["images"] = images;
        j["classes"].push_back(std::move(c));
    }
    return kOk;
}

inline int cmd_is_root(const Session& s, const ParsedArgs& args, json& j) {
    if (args.degree.empty()) throw Error("is-root needs --degree");
    auto e = parse_degree(s, args.degree);
    if (!e) {
        j["in_group"] = false;
        j["is_root"] = false;
        return kFalse;
    }
    j["in_group"] = true;
    RootQuery q = is_root(s.ctx, *e);
    j["degree"] = degree_json(s, *e);
    j["is_root"] = q.is_root();
    j["type_one"] = q.type_one;
    j["containing_sets"] = json::array();
    for (const auto& cs : q.containing_sets) {
        json entry = basic_set_json(s, s.ctx.sets[cs.set_index]);
        entry["witness"] = witness_json(s, cs.witness);
        j["containing_sets"].push_back(std::move(entry));
    }
    return q.is_root() ? kOk : kFalse;
}

inline int cmd_witness(const Session& s, const ParsedArgs& args, json& j) {
    if (args.degree.empty()) throw Error("witness needs --degree");
    auto e = parse_degree(s, args.degree);
    if (!e) {
        j["in_group"] = false;
        j["is_root"] = false;
        return kFalse;
    }
    RootQuery q = is_root(s.ctx, *e);
    j["degree"] = degree_json(s, *e);
    j["is_root"] = q.is_root();
    if (!q.is_root()) return kFalse;

    const auto& cs = q.containing_sets.front();
    const BasicSet& set = s.ctx.sets[cs.set_index];
    Derivation d = witness_derivation(s.ctx, set, *e, cs.witness);
    j["basic_set"] = basic_set_json(s, set);
    j["witness"] = witness_json(s, cs.witness);
    json images = json::object();
    for (int k = 0; k < s.ctx.t.n(); ++k)
        if (!d.image(k).is_zero())
            images[generator_name(s.ctx.t, k)] = to_string(d.image(k), s.ctx.t);
    j["derivation"] = images;
    j["annihilates_g"] = annihilates_g(d);
    auto w = derivation_degree(d, s.ctx.fg);
    j["degree_matches"] = w.has_value() && *w == *e;
    auto nil = bounded_nilpotency(d, s.spec.settings.nilpotency_cap);
    if (!nil) {
        j["nilpotency"] = {{"unknown_at_cap", s.spec.settings.nilpotency_cap}};
        return kCapExhausted;
    }
    j["nilpotency"] = {{"index", *nil}};
    return kOk;
}

inline int cmd_roots(const Session& s, const ParsedArgs& args, RunResult& res, json& j) {
    const int dim = s.basis ? s.basis->dimension() : s.ctx.fg.group.free_rank();
    if (args.box.size() != static_cast<std::size_t>(2 * dim))
        throw EmptyBoxError("roots needs --box with one <lo hi> pair per coordinate (" +
                            std::to_string(dim) + " pairs)");
    std::vector<Integer> lo(dim), hi(dim);
    for (int k = 0; k < dim; ++k) {
        lo[k] = Integer(parse_int_arg(args.box[2 * k]));
        hi[k] = Integer(parse_int_arg(args.box[2 * k + 1]));
    }

    struct Row {
        std::vector<Integer> coords;
        std::vector<Integer> torsion;
        int count;
        bool type_one;
    };
    std::vector<Row> rows;
    if (s.basis) {
        for (const auto& [w, q] : enumerate_roots_in_user_box(s.ctx, *s.basis, lo, hi))
            rows.push_back({w, {}, static_cast<int>(q.containing_sets.size()), q.type_one});
    } else {
        for (const auto& q : enumerate_roots_in_box(s.ctx, lo, hi))
            rows.push_back({q.element.free_part, q.element.torsion,
                            static_cast<int>(q.containing_sets.size()), q.type_one});
    }

    if (args.csv) {
        std::ostringstream csv;
        for (int k = 0; k < dim; ++k) csv << "x" << k << ",";
        for (std::size_t k = 0; k < s.ctx.fg.group.torsion_invariants().size() && !s.basis; ++k)
            csv << "t" << k << ",";
        csv << "count,type1\n";
        for (const auto& row : rows) {
            for (const auto& c : row.coords) csv << c.str() << ",";
            for (const auto& c : row.torsion) csv << c.str() << ",";
            csv << row.count << "," << (row.type_one ? 1 : 0) << "\n";
        }
        res.out = csv.str();
        return kOk;
    }

    j["basis"] = s.basis ? "explicit" : "canonical";
    j["box"] = json::array();
    for (int k = 0; k < dim; ++k) j["box"].push_back({to_ll(lo[k]), to_ll(hi[k])});
    j["roots"] = json::array();
    for (const auto& row : rows) {
        json r;
        r["coordinates"] = json::array();
        for (const auto& c : row.coords) r["coordinates"].push_back(to_ll(c));
        if (!row.torsion.empty()) {
            r["torsion"] = json::array();
            for (const auto& c : row.torsion) r["torsion"].push_back(to_ll(c));
        }
        r["count"] = row.count;
        r["type_one"] = row.type_one;
        j["roots"].push_back(std::move(r));
    }
    return kOk;
}

inline int cmd_verify(const Session& s, const std::string& derivation_path, json& j) {
    Derivation d = parse_derivation(read_file(derivation_path), s.ctx.t);
    if (d.is_zero()) {
        j["zero"] = true;
        j["annihilates_g"] = true;
        j["homogeneous"] = true;
        j["nilpotency"] = {{"index", 1}};
        j["elementary"] = nullptr;
        return kFalse;
    }
    bool ann = annihilates_g(d);
    j["annihilates_g"] = ann;
    auto w = derivation_degree(d, s.ctx.fg);
    j["homogeneous"] = w.has_value();
    j["degree"] = w ? degree_json(s, *w) : json(nullptr);
    auto nil = bounded_nilpotency(d, s.spec.settings.nilpotency_cap);
    if (nil)
        j["nilpotency"] = {{"index", *nil}};
    else
        j["nilpotency"] = {{"unknown_at_cap", s.spec.settings.nilpotency_cap}};
    auto spec = is_elementary(d);
    j["elementary"] = spec ? spec_json(s, *spec) : json(nullptr);

    if (!ann || !w || !spec) return kFalse;
    if (!nil) return kCapExhausted;
    return kOk;
}

inline int cmd_oracle(const Session& s, const ParsedArgs& args, json& j) {
    if (args.degree.empty()) throw Error("oracle needs --degree");
    auto e = parse_degree(s, args.degree);
    if (!e) throw Error("degree is not an element of the grading group");
    int cap = args.cap.value_or(s.spec.settings.oracle_cap);
    int samples = args.samples.value_or(s.spec.settings.oracle_samples);
    int ncap = args.nilpotency_cap.value_or(s.spec.settings.nilpotency_cap);
    unsigned seed = args.seed.value_or(s.spec.settings.seed);

    TheoremReport rep = verify_theorem(s.ctx, {*e}, cap, ncap, samples, seed);
    j["cap"] = rep.cap;
    j["nilpotency_cap"] = rep.nilpotency_cap;
    j["samples"] = rep.samples;
    j["seed"] = rep.seed;
    j["entries"] = json::array();
    for (const auto& entry : rep.entries) {
        j["entries"].push_back({{"degree", degree_json(s, entry.degree)},
                                {"space_dim", entry.space_dim},
                                {"tested", entry.tested},
                                {"nilpotent", entry.nilpotent},
                                {"elementary", entry.elementary},
                                {"unknown_at_cap", entry.unknown_at_cap},
                                {"needs_scalar_extension", entry.scalar_extension_flags},
                                {"degree_is_root", entry.degree_is_root},
                                {"has_nilpotent", entry.has_nilpotent}});
    }
    j["ok"] = rep.ok();
    if (!rep.ok()) return kFalse;
    if (rep.total_unknown() > 0) return kCapExhausted;
    return kOk;
}

}  // namespace detail

/// Command dispatch; returns the exit code with stdout/stderr payloads.
inline RunResult run(const std::vector<std::string>& args) {
    RunResult res;
    try {
        if (args.empty() || args[0] == "help" || args[0] == "--help") {
            res.out = detail::usage();
            res.code = args.empty() ? kInputError : kOk;
            return res;
        }
        const std::string& cmd = args[0];
        if (args.size() < 2) throw Error("missing spec file argument");
        detail::ParsedArgs parsed = detail::parse_args(args, 1);
        if (parsed.positional.empty()) throw Error("missing spec file argument");
        detail::Session session = detail::load_session(parsed.positional[0]);

        json j;
        int code;
        if (cmd == "info") {
            code = detail::cmd_info(session, j);
        } else if (cmd == "elementary") {
            code = detail::cmd_elementary(session, parsed, j);
        } else if (cmd == "is-root") {
            code = detail::cmd_is_root(session, parsed, j);
        } else if (cmd == "witness") {
            code = detail::cmd_witness(session, parsed, j);
        } else if (cmd == "roots") {
            code = detail::cmd_roots(session, parsed, res, j);
            if (!res.out.empty()) {  // csv already written
                res.code = code;
                return res;
            }
        } else if (cmd == "verify") {
            if (parsed.positional.size() < 2) throw Error("verify needs a derivation file");
            code = detail::cmd_verify(session, parsed.positional[1], j);
        } else if (cmd == "oracle") {
            code = detail::cmd_oracle(session, parsed, j);
        } else {
            throw Error("unknown command '" + cmd + "'");
        }
        res.out = j.dump(2) + "\n";
        res.code = code;
        return res;
    } catch (const SyntaxError& e) {
        res.err = std::string("error: ") + e.what() + "\n";
        res.code = kInputError;
    } catch (const Error& e) {
        res.err = std::string("error: ") + e.what() + "\n";
        res.code = kInputError;
    } catch (const std::exception& e) {
        res.err = std::string("internal error: ") + e.what() + "\n";
        res.code = kInputError;
    }
    return res;
}

}  // namespace trialg::cli
