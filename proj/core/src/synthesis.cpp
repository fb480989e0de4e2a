#include "csw/synthesis.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include <nlohmann/json.hpp>

#include "csw/errors.hpp"
#include "csw/rng.hpp"
#include "csw/tagging.hpp"

namespace csw {

using ordered_json = nlohmann::ordered_json;

namespace {

// Domain-separation tags for deriving independent seeded streams.
constexpr std::uint64_t kCapTag = 0xC0FFEE01;
constexpr std::uint64_t kVisitTag = 0xC0FFEE02;
constexpr std::uint64_t kPartitionTag = 0xC0FFEE03;

}  // namespace

std::string_view to_string(CsType type) {
  switch (type) {
    case CsType::SentAnnt: return "sent-annt";
    case CsType::SentRepl: return "sent-repl";
    case CsType::TokenAnnt: return "token-annt";
    case CsType::TokenRepl: return "token-repl";
  }
  return "token-repl";
}

std::string_view to_string(Side side) {
  return side == Side::InPrimary ? "primary" : "secondary";
}

CsType cs_type_from(std::string_view s) {
  if (s == "sent-annt") return CsType::SentAnnt;
  if (s == "sent-repl") return CsType::SentRepl;
  if (s == "token-annt") return CsType::TokenAnnt;
  if (s == "token-repl") return CsType::TokenRepl;
  throw ConfigError("unknown code-switching type: " + std::string(s));
}

Side side_from(std::string_view s) {
  if (s == "primary") return Side::InPrimary;
  if (s == "secondary") return Side::InSecondary;
  throw ConfigError("unknown side: " + std::string(s));
}

MixPreset mix_preset_from(std::string_view s) {
  if (s == "equal") return MixPreset::Equal;
  if (s == "extreme") return MixPreset::Extreme;
  if (s == "en-repl-equal") return MixPreset::EnReplEqual;
  throw ConfigError("unknown mix preset: " + std::string(s));
}

double SynthesisPlan::resolved_cap() const {
  if (doc_eligibility_cap >= 0.0) return doc_eligibility_cap;
  return side == Side::InPrimary ? 0.20 : 1.0;
}

void SynthesisPlan::validate() const {
  if (sentence_density < 0.0 || sentence_density > 1.0) {
    throw ConfigError("sentence_density must be in [0, 1]");
  }
  const double cap = resolved_cap();
  if (cap < 0.0 || cap > 1.0) {
    throw ConfigError("doc_eligibility_cap must be in [0, 1]");
  }
}

MixPlan plan_mix(MixPreset preset, std::uint64_t total_budget) {
  MixPlan plan;
  plan.preset = preset;
  switch (preset) {
    case MixPreset::Equal: {
      if (total_budget == 0) throw ConfigError("equal mix needs a budget > 0");
      const std::uint64_t each = total_budget / 8;
      for (Side side : {Side::InPrimary, Side::InSecondary}) {
        for (CsType type : {CsType::SentAnnt, CsType::SentRepl,
                            CsType::TokenAnnt, CsType::TokenRepl}) {
          plan.allocations.push_back({side, type, each});
        }
      }
      break;
    }
    case MixPreset::Extreme: {
      // Canonical scale 2,000M + 200M; any other budget scales both
      // allocations proportionally (10/11 and 1/11 of the total).
      std::uint64_t primary = 2'000'000'000ULL;
      std::uint64_t secondary = 200'000'000ULL;
      if (total_budget > 0) {
        primary = total_budget / 11 * 10 + (total_budget % 11) * 10 / 11;
        secondary = total_budget - primary;
      }
      plan.allocations.push_back({Side::InPrimary, CsType::TokenRepl, primary});
      plan.allocations.push_back(
          {Side::InSecondary, CsType::TokenAnnt, secondary});
      break;
    }
    case MixPreset::EnReplEqual: {
      if (total_budget == 0) {
        throw ConfigError("en-repl-equal mix needs a budget > 0");
      }
      const std::uint64_t half = total_budget / 2;
      plan.allocations.push_back({Side::InPrimary, CsType::TokenRepl, half});
      plan.allocations.push_back(
          {Side::InPrimary, CsType::SentRepl, total_budget - half});
      break;
    }
  }
  return plan;
}

MixPlan plan_mix(std::vector<Allocation> allocations) {
  if (allocations.empty()) throw ConfigError("mix plan has no allocations");
  MixPlan plan;
  plan.allocations = std::move(allocations);
  return plan;
}

std::uint64_t AccountingReport::added_total() const {
  std::uint64_t total = 0;
  for (const auto& [lang, n] : tokens_added_by_lang) total += n;
  return total;
}

void AccountingReport::merge(const AccountingReport& other) {
  docs_total = std::max(docs_total, other.docs_total);
  docs_eligible += other.docs_eligible;
  docs_touched += other.docs_touched;
  sentences_modified += other.sentences_modified;
  for (const auto& [lang, n] : other.tokens_added_by_lang) {
    tokens_added_by_lang[lang] += n;
  }
  for (const auto& [lang, n] : other.tokens_removed_by_lang) {
    tokens_removed_by_lang[lang] += n;
  }
  max_sentence_delta = std::max(max_sentence_delta, other.max_sentence_delta);
  budget_shortfall += other.budget_shortfall;
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
  touched_doc_ids.insert(touched_doc_ids.end(), other.touched_doc_ids.begin(),
                         other.touched_doc_ids.end());
}

std::string synthesize_sentence(std::string_view sentence, CsType cs_type,
                                const LanguagePair& pair, Side side,
                                const Translator* translator,
                                const TokenCsGenerator* generator) {
  const std::string& own = side == Side::InPrimary ? pair.primary_lang
                                                   : pair.secondary_lang;
  const std::string& opposite = side == Side::InPrimary ? pair.secondary_lang
                                                        : pair.primary_lang;
  switch (cs_type) {
    case CsType::SentRepl: {
      if (!translator) throw ConfigError("sent-repl requires a translator");
      std::string t = translator->translate(sentence, own, opposite);
      if (t.empty()) throw BackendError("translator returned empty output");
      return t;
    }
    case CsType::SentAnnt: {
      if (!translator) throw ConfigError("sent-annt requires a translator");
      std::string t = translator->translate(sentence, own, opposite);
      if (t.empty()) throw BackendError("translator returned empty output");
      std::string out(sentence);
      out += " (";
      out += t;
      out += ")";
      return out;
    }
    case CsType::TokenAnnt: {
      if (!generator) throw ConfigError("token-annt requires a generator");
      std::string out = generator->annotate(sentence, opposite);
      if (out.empty()) throw BackendError("generator returned empty output");
      return out;
    }
    case CsType::TokenRepl: {
      if (!generator) throw ConfigError("token-repl requires a generator");
      std::string out = generator->replace(sentence, opposite);
      if (out.empty()) throw BackendError("generator returned empty output");
      return out;
    }
  }
  throw ConfigError("unknown code-switching type");
}

MemoryDocStore::MemoryDocStore(std::vector<Document> docs)
    : docs_(std::move(docs)) {
  metas_.reserve(docs_.size());
  for (const auto& d : docs_) metas_.push_back({d.id, d.lang});
}

FileDocStore::FileDocStore(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_, std::ios::binary);
  if (!in) throw IoError("cannot open corpus file: " + path_);
  std::string line;
  std::uint64_t offset = 0;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::uint64_t line_offset = offset;
    offset += line.size() + 1;
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (view.empty()) continue;
    try {
      Document doc = document_from_json_line(view, line_no);
      metas_.push_back({std::move(doc.id), std::move(doc.lang)});
      lines_.push_back({line_offset, static_cast<std::uint32_t>(view.size())});
    } catch (const FormatError&) {
      // Lenient scan; the CLI surfaces malformed lines via CorpusReader.
    }
  }
}

Document FileDocStore::get(std::size_t index) const {
  std::ifstream in(path_, std::ios::binary);
  if (!in) throw IoError("cannot open corpus file: " + path_);
  const auto [offset, size] = lines_.at(index);
  in.seekg(static_cast<std::streamoff>(offset));
  std::string line(size, '\0');
  in.read(line.data(), static_cast<std::streamsize>(size));
  if (static_cast<std::uint32_t>(in.gcount()) != size) {
    throw IoError("short read on " + path_);
  }
  return document_from_json_line(line, index + 1);
}

namespace {

struct SentenceMod {
  ByteSpan span;
  std::string new_text;
  std::uint64_t added = 0;
  std::uint64_t removed = 0;
};

Document rebuild(const Document& doc, std::vector<SentenceMod> mods) {
  std::sort(mods.begin(), mods.end(), [](const auto& a, const auto& b) {
    return a.span.begin > b.span.begin;
  });
  Document out = doc;
  for (const auto& mod : mods) {
    out.text.replace(mod.span.begin, mod.span.size(), mod.new_text);
  }
  return out;
}

struct PlanRun {
  // index in the store -> rewritten document
  std::map<std::size_t, Document> modified;
  AccountingReport report;
};

PlanRun run_plan(const DocStore& store, const SynthesisPlan& plan,
                 const LanguagePair& pair, const SynthesisBackends& backends,
                 const std::function<bool(std::size_t)>& doc_filter) {
  plan.validate();
  pair.validate();
  if (backends.counter == nullptr) {
    throw ConfigError("synthesis requires a token counter");
  }
  const bool needs_translator =
      plan.cs_type == CsType::SentAnnt || plan.cs_type == CsType::SentRepl;
  if (needs_translator && backends.translator == nullptr) {
    throw ConfigError("sentence-level synthesis requires a translator");
  }
  if (!needs_translator && backends.generator == nullptr) {
    throw ConfigError("token-level synthesis requires a generator");
  }

  PlanRun run;
  AccountingReport& report = run.report;
  report.docs_total = store.size();

  const std::string& own = plan.side == Side::InPrimary ? pair.primary_lang
                                                        : pair.secondary_lang;
  const std::string& opposite = plan.side == Side::InPrimary
                                    ? pair.secondary_lang
                                    : pair.primary_lang;
  const LanguageTag own_tag = plan.side == Side::InPrimary
                                  ? LanguageTag::PurePrimary
                                  : LanguageTag::PureSecondary;

  if (plan.sentence_density > 0.6 && plan.side == Side::InSecondary) {
    report.warnings.push_back(
        "sentence_density " + std::to_string(plan.sentence_density) +
        " exceeds 0.6 on the secondary side; heavy rewriting of the "
        "low-resource corpus degrades its monolingual signal");
  }

  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < store.size(); ++i) {
    if (store.meta(i).lang != own) continue;
    if (doc_filter && !doc_filter(i)) continue;
    eligible.push_back(i);
  }
  report.docs_eligible = eligible.size();

  // Hard eligibility cap: exactly floor(cap * eligible) documents, chosen by
  // seeded hash so the subset is stable under reordering and parallelism.
  const auto cap_count = static_cast<std::size_t>(
      plan.resolved_cap() * static_cast<double>(eligible.size()));
  std::vector<std::size_t> capped = eligible;
  {
    auto cap_key = [&](std::size_t idx) {
      return hash64(mix64(plan.seed, kCapTag), store.meta(idx).id);
    };
    std::sort(capped.begin(), capped.end(),
              [&](std::size_t a, std::size_t b) {
                const auto ka = cap_key(a), kb = cap_key(b);
                if (ka != kb) return ka < kb;
                return store.meta(a).id < store.meta(b).id;
              });
    capped.resize(std::min(cap_count, capped.size()));
  }

  // Seeded random visit order over the capped set.
  auto visit_key = [&](std::size_t idx) {
    return hash64(mix64(plan.seed, kVisitTag), store.meta(idx).id);
  };
  std::sort(capped.begin(), capped.end(), [&](std::size_t a, std::size_t b) {
    const auto ka = visit_key(a), kb = visit_key(b);
    if (ka != kb) return ka < kb;
    return store.meta(a).id < store.meta(b).id;
  });

  const std::uint64_t budget =
      plan.budget_driven() ? *plan.token_budget : 0;
  std::uint64_t cumulative = 0;
  bool stopped = plan.budget_driven() && cumulative >= budget;

  for (std::size_t idx : capped) {
    if (stopped) break;
    const Document doc = store.get(idx);
    const auto sentences = tag_document(doc, pair);
    Xoshiro256ss pick(hash64(plan.seed, doc.id));

    std::vector<SentenceMod> applied;
    for (std::size_t si = 0; si < sentences.size(); ++si) {
      const double u = pick.unit();  // drawn for every sentence
      if (sentences[si].tag != own_tag) continue;
      if (u >= plan.sentence_density) continue;
      if (plan.budget_driven() && cumulative >= budget) {
        stopped = true;
        break;
      }
      const std::string_view original =
          std::string_view(doc.text)
              .substr(sentences[si].span.begin, sentences[si].span.size());
      std::string rewritten;
      try {
        rewritten = synthesize_sentence(original, plan.cs_type, pair,
                                        plan.side, backends.translator,
                                        backends.generator);
      } catch (const std::exception& e) {
        report.failures.push_back({doc.id, si, e.what()});
        continue;
      }
      const std::uint64_t new_opp = backends.counter->count(rewritten, opposite);
      const std::uint64_t old_opp = backends.counter->count(original, opposite);
      const std::uint64_t added = new_opp > old_opp ? new_opp - old_opp : 0;
      const std::uint64_t old_own = backends.counter->count(original, own);
      const std::uint64_t new_own = backends.counter->count(rewritten, own);
      const std::uint64_t removed = old_own > new_own ? old_own - new_own : 0;

      applied.push_back({sentences[si].span, std::move(rewritten), added,
                         removed});
      cumulative += added;
      report.max_sentence_delta = std::max(report.max_sentence_delta, added);
      ++report.sentences_modified;
      report.tokens_added_by_lang[opposite] += added;
      if (removed > 0) report.tokens_removed_by_lang[own] += removed;
    }
    if (!applied.empty()) {
      ++report.docs_touched;
      report.touched_doc_ids.push_back(doc.id);
      run.modified.emplace(idx, rebuild(doc, std::move(applied)));
    }
    if (plan.budget_driven() && cumulative >= budget) stopped = true;
  }

  if (plan.budget_driven() && cumulative < budget) {
    report.budget_shortfall = budget - cumulative;
  }
  return run;
}

void emit_all(const DocStore& store,
              const std::map<std::size_t, Document>& modified,
              const std::function<void(const Document&)>& sink) {
  for (std::size_t i = 0; i < store.size(); ++i) {
    const auto it = modified.find(i);
    if (it != modified.end()) {
      sink(it->second);
    } else {
      sink(store.get(i));
    }
  }
}

}  // namespace

AccountingReport allocate_and_synthesize(
    const DocStore& store, const SynthesisPlan& plan, const LanguagePair& pair,
    const SynthesisBackends& backends,
    const std::function<void(const Document&)>& sink,
    const std::function<bool(std::size_t)>& doc_filter) {
  PlanRun run = run_plan(store, plan, pair, backends, doc_filter);
  if (sink) emit_all(store, run.modified, sink);
  return std::move(run.report);
}

std::pair<std::vector<Document>, AccountingReport> synthesize_corpus(
    const std::vector<Document>& docs, const SynthesisPlan& plan,
    const LanguagePair& pair, const SynthesisBackends& backends) {
  MemoryDocStore store(docs);
  std::vector<Document> out;
  out.reserve(docs.size());
  AccountingReport report = allocate_and_synthesize(
      store, plan, pair, backends,
      [&](const Document& d) { out.push_back(d); });
  return {std::move(out), std::move(report)};
}

MixReport execute_mix(
    const DocStore* primary_store, const DocStore* secondary_store,
    const MixPlan& mix, const LanguagePair& pair,
    const SynthesisBackends& backends, std::uint64_t seed,
    const std::function<void(const Document&)>& primary_sink,
    const std::function<void(const Document&)>& secondary_sink) {
  if (mix.allocations.empty()) throw ConfigError("mix plan has no allocations");

  MixReport out;
  std::uint64_t grand_docs_total = 0;
  for (Side side : {Side::InPrimary, Side::InSecondary}) {
    const DocStore* store =
        side == Side::InPrimary ? primary_store : secondary_store;
    const auto& sink = side == Side::InPrimary ? primary_sink : secondary_sink;

    std::vector<std::size_t> side_allocs;
    for (std::size_t a = 0; a < mix.allocations.size(); ++a) {
      if (mix.allocations[a].side == side) side_allocs.push_back(a);
    }
    if (side_allocs.empty()) {
      // Nothing planned for this side; pass the corpus through untouched.
      if (store != nullptr) {
        grand_docs_total += store->size();
        if (sink) emit_all(*store, {}, sink);
      }
      continue;
    }
    if (store == nullptr) {
      throw ConfigError(std::string("mix plan needs a ") +
                        std::string(to_string(side)) + "-side corpus");
    }

    std::uint64_t side_total = 0;
    for (std::size_t a : side_allocs) {
      side_total += mix.allocations[a].token_budget;
    }

    // Budget-proportional hash partition of this side's documents; disjoint
    // by construction.
    auto partition_of = [&](std::size_t doc_index) -> std::size_t {
      if (side_total == 0) return static_cast<std::size_t>(-1);
      const std::uint64_t h =
          hash64(mix64(seed, kPartitionTag), store->meta(doc_index).id);
      const double x = static_cast<double>(h) / 18446744073709551616.0;
      double cum = 0.0;
      for (std::size_t k = 0; k < side_allocs.size(); ++k) {
        cum += static_cast<double>(mix.allocations[side_allocs[k]].token_budget) /
               static_cast<double>(side_total);
        if (x < cum) return k;
      }
      return side_allocs.size() - 1;
    };

    std::map<std::size_t, Document> merged;
    for (std::size_t k = 0; k < side_allocs.size(); ++k) {
      const Allocation& alloc = mix.allocations[side_allocs[k]];
      SynthesisPlan plan;
      plan.side = side;
      plan.cs_type = alloc.type;
      plan.token_budget = alloc.token_budget;
      plan.sentence_density = 1.0;
      plan.seed = mix64(seed, side_allocs[k] + 1);
      PlanRun run = run_plan(
          *store, plan, pair, backends,
          [&, k](std::size_t i) { return partition_of(i) == k; });
      for (auto& [i, doc] : run.modified) merged.emplace(i, std::move(doc));
      out.totals.merge(run.report);
      out.per_allocation.emplace_back(alloc, std::move(run.report));
    }
    grand_docs_total += store->size();
    if (sink) emit_all(*store, merged, sink);
  }
  out.totals.docs_total = grand_docs_total;
  return out;
}

// --- SFT export -----------------------------------------------------------

std::string language_display_name(std::string_view code) {
  if (code == "en") return "English";
  if (code == "zh") return "Chinese";
  if (code == "ro") return "Romanian";
  if (code == "bn") return "Bengali";
  return std::string(code);
}

namespace {

std::string with_article(const std::string& name) {
  const char c = name.empty() ? 'x' : static_cast<char>(
      std::tolower(static_cast<unsigned char>(name[0])));
  const bool vowel = c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
  return (vowel ? "an " : "a ") + name;
}

}  // namespace

std::string sft_instruction(SegmentCategory task, const LanguagePair& pair,
                            Side source_side, std::string_view sentence) {
  const std::string src = language_display_name(
      source_side == Side::InPrimary ? pair.primary_lang : pair.secondary_lang);
  const std::string other = language_display_name(
      source_side == Side::InPrimary ? pair.secondary_lang : pair.primary_lang);
  std::string out;
  if (task == SegmentCategory::Annotation) {
    out = "Given a pair of " + src + "-" + other +
          " parallel sentence, generate " + with_article(other) + "-annotated " +
          src +
          " sentence. Annotation is the use of words from another language to "
          "explain certain words in a sentence.\n\n[" +
          src + " Sentence]: ";
  } else if (task == SegmentCategory::Replacement) {
    out = "Given a pair of " + src + "-" + other + " sentence, generate " +
          with_article(src) + " and " + other +
          " code-switching sentence. Code-switching is the use of more than "
          "one linguistic variety in a manner consistent with the syntax and "
          "phonology of each variety.\n\n[" +
          src + " Sentence]: ";
  } else {
    throw ConfigError("SFT task must be annotation or replacement");
  }
  out += sentence;
  return out;
}

std::vector<SftRecord> export_sft_records(
    const std::vector<std::pair<std::string, std::string>>& parallel_pairs,
    const std::vector<std::string>& generated, SegmentCategory task,
    const LanguagePair& pair, Side source_side) {
  if (parallel_pairs.size() != generated.size()) {
    throw ConfigError("parallel pairs and generated outputs differ in length: " +
                      std::to_string(parallel_pairs.size()) + " vs " +
                      std::to_string(generated.size()));
  }
  std::vector<SftRecord> records;
  records.reserve(parallel_pairs.size());
  for (std::size_t i = 0; i < parallel_pairs.size(); ++i) {
    const std::string& source = source_side == Side::InPrimary
                                    ? parallel_pairs[i].first
                                    : parallel_pairs[i].second;
    SftRecord rec;
    rec.instruction = sft_instruction(task, pair, source_side, source);
    rec.response = generated[i];
    rec.task = std::string(to_string(task));
    rec.lang_pair = pair.name();
    records.push_back(std::move(rec));
  }
  return records;
}

std::string to_json_line(const SftRecord& record) {
  ordered_json j;
  j["instruction"] = record.instruction;
  j["response"] = record.response;
  j["task"] = record.task;
  j["lang_pair"] = record.lang_pair;
  return j.dump();
}

}  // namespace csw
