#include "polymod/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "polymod/branching.hpp"
#include "polymod/coherence.hpp"
#include "polymod/completion.hpp"
#include "polymod/eclass.hpp"
#include "polymod/order.hpp"
#include "polymod/polygraph.hpp"
#include "polymod/rewrite.hpp"

#ifndef POLYMOD_VERSION
#define POLYMOD_VERSION "0.0.0"
#endif

namespace polymod::cli {

  std::string digest(std::string const& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
  }

  namespace {
    struct Config {
      std::string              command;
      std::string              file;
      std::vector<std::string> words;
      std::string              mode;
      std::string              order;
      Bounds                   bounds;
      std::size_t              max_rules = 64;
      std::string              format    = "text";
      bool                     trace     = false;
      bool                     paths     = false;
      bool                     critical  = false;
      std::string              check     = "huet";
      std::string              pairs     = "sr";
      std::string              variant   = "ere";
      std::string              out_file;
      std::size_t              samples     = 1000;
      std::size_t              max_degree  = 8;
      std::uint64_t            seed        = 42;
      std::size_t              test_degree = 5;
      bool                     weak        = false;
    };

    class UsageError : public std::runtime_error {
     public:
      using std::runtime_error::runtime_error;
    };

    /// Blank-line separated `key: value` blocks, or plain lines in text mode.
    class Report {
     public:
      Report(std::ostream& os, bool records) : os_(os), records_(records) {}

      bool records() const noexcept {
        return records_;
      }
      void block() {
        if (records_ && started_) {
          os_ << '\n';
        }
        started_ = true;
      }
      void kv(std::string const& key, std::string const& value) {
        os_ << key << ": " << value << '\n';
      }
      void comment(std::string const& key, std::string const& value) {
        os_ << "# " << key << ": " << value << '\n';
      }
      void line(std::string const& text) {
        os_ << text << '\n';
      }
      std::ostream& stream() {
        return os_;
      }

     private:
      std::ostream& os_;
      bool          records_;
      bool          started_ = false;
    };

    std::string read_file(std::string const& path) {
      std::ifstream in(path, std::ios::binary);
      if (!in) {
        throw UsageError("cannot open " + path);
      }
      std::ostringstream os;
      os << in.rdbuf();
      return os.str();
    }

    std::string join_letters(Polygraph const& p, std::vector<Letter> const& xs) {
      return p.format(Word(xs));
    }

    std::string yes_no(bool b) {
      return b ? "yes" : "no";
    }

    OrderSpec effective_order(Polygraph const& p, Config const& cfg) {
      if (cfg.order.empty()) {
        return default_order(p);
      }
      auto k = order_kind_from_string(cfg.order);
      if (!k) {
        throw UsageError("unknown order " + cfg.order);
      }
      return p.declared_order().with_kind(*k);
    }

    Polygraph effective_polygraph(Polygraph const& p, Config const& cfg) {
      if (cfg.mode.empty()) {
        return p;
      }
      auto m = mode_from_string(cfg.mode);
      if (!m) {
        throw UsageError("unknown mode " + cfg.mode);
      }
      return p.with_mode(*m);
    }

    void header(Report& r, Config const& cfg, std::string const& input_digest, Polygraph const& p,
                OrderSpec const& order) {
      auto emit = [&](std::string const& k, std::string const& v) {
        r.records() ? r.kv(k, v) : r.comment(k, v);
      };
      r.block();
      emit("tool", std::string("polymod ") + POLYMOD_VERSION);
      emit("command", cfg.command);
      emit("input-digest", "fnv1a64:" + input_digest);
      emit("mode", to_string(p.mode()));
      emit("order", to_string(order.kind()));
      emit("max-class", std::to_string(cfg.bounds.max_class_size));
      emit("max-depth", std::to_string(cfg.bounds.max_depth));
      emit("max-degree-delta", std::to_string(cfg.bounds.max_degree_delta));
      emit("max-candidates", std::to_string(cfg.bounds.max_candidates));
      emit("max-rules", std::to_string(cfg.max_rules));
    }

    int cmd_parse(Report& r, Polygraph const& p) {
      if (!r.records()) {
        r.stream() << serialize(p);
        return exit_ok;
      }
      r.block();
      std::string gens;
      for (auto const& g : p.generators()) {
        gens += (gens.empty() ? "" : " ") + g.name;
      }
      r.kv("generators", gens);
      r.kv("primary-rules", std::to_string(p.r_rules().size()));
      r.kv("modulo-rules", std::to_string(p.e_rules().size()));
      r.kv("modulo-commutation", yes_no(p.modulo_commutation()));
      for (auto const* rules : {&p.r_rules(), &p.e_rules()}) {
        for (auto const& rule : *rules) {
          r.block();
          r.kv("rule", rule.id);
          r.kv("kind", rule.kind == RuleKind::primary ? "primary" : "modulo");
          r.kv("lhs", p.format(rule.lhs));
          r.kv("rhs", p.format(rule.rhs));
        }
      }
      return exit_ok;
    }

    int cmd_normalize(Report& r, Config const& cfg, Polygraph const& p, EEngine const& e) {
      Word w   = p.parse_word(cfg.words);
      auto res = normalize(p, e, w, cfg.bounds.max_depth);
      r.block();
      r.kv("word", p.format(w));
      r.kv("normal-form", p.format(res.normal_form));
      r.kv("e-normal-form", p.format(e.e_normal_form(res.normal_form).normal_form));
      r.kv("steps", std::to_string(res.steps));
      r.kv("status", to_string(res.status));
      if (cfg.trace) {
        r.kv("path", format_path(p, res.path));
        Word cur = res.path.source();
        for (auto const& s : res.path.steps()) {
          cur = apply_step(p, cur, s);
          r.kv("step", format_step(p, s) + " -> " + p.format(cur));
        }
      }
      return res.status == NormalizeStatus::complete ? exit_ok : exit_domain_failure;
    }

    int cmd_eclass(Report& r, Config const& cfg, Polygraph const& p, EEngine const& e) {
      Word w   = p.parse_word(cfg.words);
      auto cls = e.e_class(w);
      r.block();
      r.kv("word", p.format(w));
      r.kv("size", std::to_string(cls->members.size()));
      r.kv("representative", p.format(cls->representative));
      r.kv("e-normal-form", p.format(e.e_normal_form(w).normal_form));
      r.kv("overflow", yes_no(cls->overflow));
      r.kv("complete", yes_no(cls->complete()));
      for (auto const& m : cls->members) {
        r.kv("member", p.format(m));
        if (cfg.paths) {
          r.kv("witness", format_path(p, cls->witness(m)));
        }
      }
      return exit_ok;
    }

    int cmd_orders(Report& r, Polygraph const& p, EEngine const& e, OrderSpec const& order) {
      auto rep = check_compatibility(order, p, e);
      r.block();
      r.kv("order", to_string(order.kind()));
      r.kv("verdict", to_string(rep.verdict));
      r.kv("comparisons", std::to_string(rep.comparisons));
      if (rep.rule_id) {
        r.kv("rule", *rep.rule_id);
      }
      if (rep.witness) {
        r.kv("witness", p.format(rep.witness->first) + " <= " + p.format(rep.witness->second));
      }
      return rep.verdict == Compatibility::compatible ? exit_ok : exit_domain_failure;
    }

    void emit_branching(Report& r, Polygraph const& p, CriticalBranching const& c,
                        std::optional<ConfluenceWitness> const& w) {
      Branching const& b = c.branching;
      if (!r.records()) {
        std::string line = p.format(b.f.source()) + " | " + to_string(c.kind) + " | "
                           + p.rule_id(c.first) + " " + p.rule_id(c.second);
        if (w) {
          line += std::string(" | ") + to_string(w->verdict);
        }
        r.line(line);
        return;
      }
      r.block();
      r.kv("source", p.format(b.f.source()));
      r.kv("canonical", p.format(c.canonical));
      r.kv("kind", to_string(c.kind));
      r.kv("rules", p.rule_id(c.first) + " " + p.rule_id(c.second));
      r.kv("shared", join_letters(p, c.shared));
      r.kv("f", format_path(p, b.f));
      r.kv("e", format_path(p, b.e));
      r.kv("g", format_path(p, b.g));
      if (w) {
        r.kv("verdict", to_string(w->verdict));
        if (w->verdict == Verdict::confluent) {
          r.kv("f-prime", format_path(p, w->f_prime));
          r.kv("g-prime", format_path(p, w->g_prime));
          r.kv("e-prime", format_path(p, w->e_prime));
        } else if (w->normal_forms) {
          r.kv("normal-forms",
               p.format(w->normal_forms->first) + " | " + p.format(w->normal_forms->second));
        }
      }
    }

    int cmd_branchings(Report& r, Config const& cfg, Polygraph const& p, EEngine const& e) {
      std::optional<ConfluenceVariant> variant;
      if (cfg.check == "huet") {
        variant = ConfluenceVariant::huet;
      } else if (cfg.check == "jk") {
        variant = ConfluenceVariant::jk_confluence;
      } else if (cfg.check != "none") {
        throw UsageError("unknown check " + cfg.check);
      }
      std::vector<PairKind> kinds;
      if (cfg.pairs == "sr" || cfg.pairs == "all") {
        kinds.push_back(PairKind::s_vs_r);
      }
      if (cfg.pairs == "se" || cfg.pairs == "all") {
        kinds.push_back(PairKind::s_vs_e);
      }
      if (kinds.empty()) {
        throw UsageError("unknown pair kind " + cfg.pairs);
      }
      std::vector<CriticalBranching> items;
      if (cfg.critical || cfg.words.empty()) {
        for (auto k : kinds) {
          auto set = critical_branchings(p, e, k, cfg.bounds);
          items.insert(items.end(), set.items.begin(), set.items.end());
          if (set.incomplete) {
            r.block();
            r.kv("warning", "candidate set may be incomplete (E does not preserve degree)");
          }
        }
      } else {
        // every local branching at the given word
        Word w = p.parse_word(cfg.words);
        auto plain = p.with_mode(Mode::R);
        for (auto const& s : enumerate_steps(p, e, w)) {
          Path f = s.to_path(p);
          for (auto const& t : enumerate_steps(plain, e, w)) {
            Path g = t.to_path(p);
            Branching b{f, Path(w), g};
            CriticalBranching c{b, classify_local(p, e, b), e.canonical(w), s.r.rule, t.r.rule,
                                false, {}, !s.e1.empty()};
            items.push_back(std::move(c));
          }
        }
      }
      int code = exit_ok;
      for (auto const& c : items) {
        std::optional<ConfluenceWitness> w;
        if (variant) {
          auto v = *variant;
          if (v == ConfluenceVariant::jk_confluence && !c.branching.e.empty()) {
            v = ConfluenceVariant::jk_coherence;
          }
          w = check_confluence_modulo(p, e, c.branching, v, cfg.bounds);
          if (w->verdict != Verdict::confluent) {
            code = exit_domain_failure;
          }
        }
        emit_branching(r, p, c, w);
      }
      r.block();
      if (r.records()) {
        r.kv("count", std::to_string(items.size()));
      } else {
        r.comment("count", std::to_string(items.size()));
      }
      return code;
    }

    int cmd_complete(Report& r, Config const& cfg, Polygraph const& p, OrderSpec const& order) {
      auto variant = completion_variant_from_string(cfg.variant);
      if (!variant) {
        throw UsageError("unknown variant " + cfg.variant);
      }
      CompletionLimits limits;
      limits.bounds    = cfg.bounds;
      limits.max_rules = cfg.max_rules;
      auto res         = complete(p, order, *variant, limits);
      bool rec         = r.records();
      r.block();
      auto emit = [&](std::string const& k, std::string const& v) {
        rec ? r.kv(k, v) : r.comment(k, v);
      };
      emit("status", to_string(res.status));
      emit("iterations", std::to_string(res.iterations));
      emit("added-count", std::to_string(res.added.size()));
      if (res.unorientable) {
        emit("unorientable",
             p.format(res.unorientable->first) + " | " + p.format(res.unorientable->second));
      }
      for (auto const& rule : res.added) {
        emit("added", rule.id + ": " + p.format(rule.lhs) + " => " + p.format(rule.rhs));
      }
      if (cfg.trace) {
        for (auto const& ev : res.trace) {
          std::string v = to_string(ev.tag);
          if (!ev.rule_id.empty()) {
            v += " " + ev.rule_id;
          }
          if (ev.tag == TraceTag::BranchingProcessed) {
            v += " " + p.format(ev.source);
          } else {
            v += " " + p.format(ev.lhs) + " | " + p.format(ev.rhs);
          }
          emit("trace", v);
        }
      }
      std::string text = serialize(res.completed);
      if (!cfg.out_file.empty()) {
        std::ofstream out(cfg.out_file, std::ios::binary);
        if (!out) {
          throw UsageError("cannot write " + cfg.out_file);
        }
        out << text;
      } else if (!rec) {
        r.stream() << text;
      }
      return res.status == CompletionStatus::success ? exit_ok : exit_domain_failure;
    }

    void emit_square(Report& r, Polygraph const& p, SquareCell const& a) {
      if (!r.records()) {
        r.line(a.label + " [" + to_string(a.origin) + "] " + p.format(a.top.source())
               + " : top " + format_path(p, a.top) + " ; left " + format_path(p, a.left)
               + " ; bottom " + format_path(p, a.bottom) + " ; right " + format_path(p, a.right));
        return;
      }
      r.block();
      r.kv("cell", a.label);
      r.kv("origin", to_string(a.origin));
      r.kv("corner", p.format(a.top.source()));
      r.kv("top", format_path(p, a.top));
      r.kv("left", format_path(p, a.left));
      r.kv("bottom", format_path(p, a.bottom));
      r.kv("right", format_path(p, a.right));
    }

    int cmd_cohere(Report& r, Config const& cfg, Polygraph const& p, EEngine const& e,
                   OrderSpec const& order) {
      auto gamma = coherent_completion(p, e, cfg.bounds);
      auto conf  = p.e_rules().empty() ? std::vector<SquareCell>{} : conf_e(e);
      auto ext   = assemble_acyclic_extension(p, e, order, gamma, conf,
                                              ExtensionOptions{cfg.test_degree, cfg.weak},
                                              cfg.bounds);
      for (auto const& a : ext.gamma) {
        emit_square(r, p, a);
      }
      for (auto const& a : ext.conf_e) {
        emit_square(r, p, a);
      }
      for (auto const& a : ext.n_cells) {
        emit_square(r, p, a);
      }
      r.block();
      auto emit = [&](std::string const& k, std::string const& v) {
        r.records() ? r.kv(k, v) : r.comment(k, v);
      };
      emit("a-cells", std::to_string(gamma.a_cells.size()));
      emit("b-cells", std::to_string(gamma.b_cells.size()));
      emit("conf-e-cells", std::to_string(ext.conf_e.size()));
      emit("n-cells", std::to_string(ext.n_cells.size()));
      emit("peiffer", ext.peiffer.describe());
      emit("terminating", to_string(ext.checklist.terminating));
      emit("gamma-confluent", to_string(ext.checklist.gamma_confluent));
      emit("e-convergent", to_string(ext.checklist.e_convergent));
      emit("irr-e-normalizing", to_string(ext.checklist.irr_e_normalizing));
      emit("weak-commutation", to_string(ext.checklist.weak_commutation));
      if (ext.checklist.failing_word) {
        emit("failing-word", p.format(*ext.checklist.failing_word));
      }
      emit("acyclic", ext.conditional ? "conditional" : "by-theorem");
      return exit_ok;
    }

    std::string format_qpath(std::vector<QuotientStep> const& path) {
      if (path.empty()) {
        return "id";
      }
      std::string out;
      for (auto const& s : path) {
        out += (out.empty() ? "" : " ") + s.rule_id;
      }
      return out;
    }

    int cmd_quotient(Report& r, Config const& cfg, Polygraph const& p, EEngine const& e) {
      auto gamma = coherent_completion(p, e, cfg.bounds);
      auto gp    = quotient_globular(p, e, gamma.a_cells);
      for (auto const& cr : gp.rules) {
        if (r.records()) {
          r.block();
          r.kv("class-rule", cr.id);
          r.kv("lhs", p.format(cr.lhs));
          r.kv("rhs", p.format(cr.rhs));
        } else {
          r.line("class-rule " + cr.id + ": [" + p.format(cr.lhs) + "] => [" + p.format(cr.rhs)
                 + "]");
        }
      }
      for (auto const& c : gp.cells3) {
        if (r.records()) {
          r.block();
          r.kv("cell3", c.label);
          r.kv("source-class", p.format(c.source));
          r.kv("target-class", p.format(c.target));
          r.kv("source-path", format_qpath(c.source_path));
          r.kv("target-path", format_qpath(c.target_path));
        } else {
          r.line("cell3 " + c.label + " at [" + p.format(c.source) + "]: "
                 + format_qpath(c.source_path) + " => " + format_qpath(c.target_path));
        }
      }
      r.block();
      if (r.records()) {
        r.kv("cells3", std::to_string(gp.cells3.size()));
      } else {
        r.comment("cells3", std::to_string(gp.cells3.size()));
      }
      return exit_ok;
    }

    int cmd_fuzz(Report& r, Config const& cfg, Polygraph const& p, EEngine const& e) {
      auto rep = newman_fuzz(p, e, FuzzOptions{cfg.samples, cfg.max_degree, cfg.seed}, cfg.bounds);
      r.block();
      r.kv("samples", std::to_string(rep.samples));
      r.kv("seed", std::to_string(cfg.seed));
      r.kv("max-degree", std::to_string(cfg.max_degree));
      r.kv("local-branchings", std::to_string(rep.local_branchings));
      r.kv("local-failures", std::to_string(rep.local_failures));
      r.kv("normal-form-failures", std::to_string(rep.nf_failures));
      r.kv("depth-exceeded", std::to_string(rep.depth_exceeded));
      if (rep.first_failure) {
        r.kv("first-failure", p.format(*rep.first_failure));
        r.kv("reason", rep.first_failure_reason);
      }
      bool ok = rep.local_failures == 0 && rep.nf_failures == 0 && rep.depth_exceeded == 0;
      return ok ? exit_ok : exit_domain_failure;
    }

    int dispatch(Config const& cfg, std::ostream& out) {
      std::string text   = read_file(cfg.file);
      Polygraph   parsed = parse_presentation(text);
      Polygraph   p      = effective_polygraph(parsed, cfg);
      OrderSpec   order  = effective_order(p, cfg);
      EEngine     e(p, cfg.bounds);
      Report      r(out, cfg.format == "records");
      if (cfg.format != "records" && cfg.format != "text") {
        throw UsageError("unknown format " + cfg.format);
      }
      OrderSpec shown = order;
      if (cfg.command == "complete" && cfg.variant == "plain" && order.kind() == OrderKind::cdeglex) {
        shown = order.with_kind(OrderKind::deglex);
      }
      header(r, cfg, digest(text), p, shown);
      if (cfg.command == "parse") {
        return cmd_parse(r, p);
      } else if (cfg.command == "normalize") {
        return cmd_normalize(r, cfg, p, e);
      } else if (cfg.command == "eclass") {
        return cmd_eclass(r, cfg, p, e);
      } else if (cfg.command == "orders") {
        return cmd_orders(r, p, e, order);
      } else if (cfg.command == "branchings") {
        return cmd_branchings(r, cfg, p, e);
      } else if (cfg.command == "complete") {
        return cmd_complete(r, cfg, p, order);
      } else if (cfg.command == "cohere") {
        return cmd_cohere(r, cfg, p, e, order);
      } else if (cfg.command == "quotient") {
        return cmd_quotient(r, cfg, p, e);
      } else if (cfg.command == "fuzz") {
        return cmd_fuzz(r, cfg, p, e);
      }
      throw UsageError("unknown command " + cfg.command);
    }
  }  // namespace

  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    Config   cfg;
    CLI::App app{"Rewriting modulo: completion, critical branchings and coherence"};
    app.name("polymod");
    app.require_subcommand(1, 1);

    auto add_common = [&](CLI::App* sub, bool words) {
      sub->add_option("file", cfg.file, "presentation file")->required();
      if (words) {
        sub->add_option("word", cfg.words, "generator names; 1 is the empty word");
      }
      sub->add_option("--mode", cfg.mode, "override the mode: R, ER, RE, ERE");
      sub->add_option("--order", cfg.order, "deglex or cdeglex on the declared precedence");
      sub->add_option("--max-class", cfg.bounds.max_class_size, "E-class size bound");
      sub->add_option("--max-depth", cfg.bounds.max_depth, "normalization depth bound");
      sub->add_option("--max-degree-delta", cfg.bounds.max_degree_delta,
                      "extra degree allowed in E-classes and candidates");
      sub->add_option("--max-candidates", cfg.bounds.max_candidates,
                      "candidate sources examined per rule pair");
      sub->add_option("--format", cfg.format, "text or records");
    };

    auto* parse = app.add_subcommand("parse", "validate and print a presentation");
    add_common(parse, false);
    auto* norm = app.add_subcommand("normalize", "S-normal form of a word");
    add_common(norm, true);
    norm->add_flag("--trace", cfg.trace, "print every step");
    auto* ecls = app.add_subcommand("eclass", "E-class of a word");
    add_common(ecls, true);
    ecls->add_flag("--paths", cfg.paths, "witness path from the representative to each member");
    auto* ord = app.add_subcommand("orders", "compatibility of the order with R modulo E");
    add_common(ord, false);
    auto* br = app.add_subcommand("branchings", "critical or local branchings");
    add_common(br, true);
    br->add_flag("--critical", cfg.critical, "critical branchings (default without a word)");
    br->add_option("--check", cfg.check, "huet, jk or none");
    br->add_option("--pairs", cfg.pairs, "sr, se or all");
    auto* comp = app.add_subcommand("complete", "completion modulo");
    add_common(comp, false);
    comp->add_option("--variant", cfg.variant, "er, ere or plain");
    comp->add_option("--max-rules", cfg.max_rules, "rules the completion may add");
    comp->add_flag("--trace", cfg.trace, "print the inference trace");
    comp->add_option("--out", cfg.out_file, "write the completed presentation here");
    auto* coh = app.add_subcommand("cohere", "coherent completion and acyclic extension");
    add_common(coh, false);
    coh->add_option("--test-degree", cfg.test_degree, "degree of the E-normalization test set");
    coh->add_flag("--weak-commutation", cfg.weak, "also build the N(sigma, rho) squares");
    auto* quo = app.add_subcommand("quotient", "globular coherent presentation of the quotient");
    add_common(quo, false);
    auto* fz = app.add_subcommand("fuzz", "random local branchings and normal forms");
    add_common(fz, false);
    fz->add_option("--samples", cfg.samples, "number of random words");
    fz->add_option("--max-degree", cfg.max_degree, "largest word degree");
    fz->add_option("--seed", cfg.seed, "random seed");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (CLI::CallForHelp const& e) {
      return app.exit(e, out, err);
    } catch (CLI::CallForAllHelp const& e) {
      return app.exit(e, out, err);
    } catch (CLI::ParseError const& e) {
      app.exit(e, out, err);
      return exit_usage;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
      return dispatch(cfg, out);
    } catch (ParseError const& e) {
      err << cfg.file << ':' << e.line() << ':' << e.column() << ": " << e.detail() << '\n';
      return exit_usage;
    } catch (UsageError const& e) {
      err << "polymod: " << e.what() << '\n';
      return exit_usage;
    } catch (PresentationError const& e) {
      err << "polymod: " << e.what() << '\n';
      return exit_usage;
    } catch (NonConfluentSystem const& e) {
      err << "polymod: " << e.what() << '\n';
      return exit_domain_failure;
    } catch (std::exception const& e) {
      err << "polymod: " << e.what() << '\n';
      return exit_domain_failure;
    }
  }

}  // namespace polymod::cli
