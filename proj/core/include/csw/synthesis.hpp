#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "csw/corpus.hpp"
#include "csw/tokens.hpp"

namespace csw {

/// Sentence translator. Deterministic for a fixed input; remote backends
/// run at temperature 0.
class Translator {
 public:
  virtual ~Translator() = default;
  virtual std::string translate(std::string_view text, std::string_view src_lang,
                                std::string_view tgt_lang) const = 0;
};

/// Generates token-level code-switching inside one sentence. annotate()
/// output keeps the whole original sentence as a subsequence; replace()
/// swaps selected terms for their translations.
class TokenCsGenerator {
 public:
  virtual ~TokenCsGenerator() = default;
  virtual std::string annotate(std::string_view sentence,
                               std::string_view tgt_lang) const = 0;
  virtual std::string replace(std::string_view sentence,
                              std::string_view tgt_lang) const = 0;
};

enum class CsType { SentAnnt, SentRepl, TokenAnnt, TokenRepl };
enum class Side { InPrimary, InSecondary };

std::string_view to_string(CsType type);
std::string_view to_string(Side side);
CsType cs_type_from(std::string_view s);
Side side_from(std::string_view s);

/// One synthesis run: which side's documents to modify, the type to inject,
/// and either a new-token budget (the driving constraint) or a pure
/// sentence-density run when no budget is set.
struct SynthesisPlan {
  Side side = Side::InPrimary;
  CsType cs_type = CsType::TokenRepl;
  std::optional<std::uint64_t> token_budget;
  double sentence_density = 1.0;
  /// Fraction of eligible documents that may be modified; negative means
  /// the side default (0.20 for InPrimary, 1.0 for InSecondary).
  double doc_eligibility_cap = -1.0;
  std::uint64_t seed = 0;

  double resolved_cap() const;
  bool budget_driven() const { return token_budget.has_value(); }
  void validate() const;
};

struct Allocation {
  Side side = Side::InPrimary;
  CsType type = CsType::TokenRepl;
  std::uint64_t token_budget = 0;

  bool operator==(const Allocation&) const = default;
};

enum class MixPreset { Equal, Extreme, EnReplEqual };

MixPreset mix_preset_from(std::string_view s);

struct MixPlan {
  std::vector<Allocation> allocations;
  std::optional<MixPreset> preset;
};

/// Equal: the budget split evenly over all eight (side, type) cells.
/// Extreme: the canonical (InPrimary TokenRepl 2000M, InSecondary TokenAnnt
/// 200M) pair scaled proportionally to total_budget / 2200M (total_budget 0
/// keeps the canonical scale). EnReplEqual: InPrimary TokenRepl and
/// InPrimary SentRepl at half the budget each.
MixPlan plan_mix(MixPreset preset, std::uint64_t total_budget);
MixPlan plan_mix(std::vector<Allocation> allocations);

struct SentenceFailure {
  std::string doc_id;
  std::size_t sentence_index = 0;
  std::string message;
};

struct AccountingReport {
  std::uint64_t docs_total = 0;
  std::uint64_t docs_eligible = 0;
  std::uint64_t docs_touched = 0;
  std::uint64_t sentences_modified = 0;
  std::map<std::string, std::uint64_t> tokens_added_by_lang;
  std::map<std::string, std::uint64_t> tokens_removed_by_lang;
  /// Largest single-sentence added-token delta seen in the run.
  std::uint64_t max_sentence_delta = 0;
  /// Tokens still missing when the corpus ran out before the budget.
  std::uint64_t budget_shortfall = 0;
  std::vector<SentenceFailure> failures;
  std::vector<std::string> warnings;
  std::vector<std::string> touched_doc_ids;

  std::uint64_t added_total() const;
  void merge(const AccountingReport& other);
};

struct SynthesisBackends {
  const Translator* translator = nullptr;
  const TokenCsGenerator* generator = nullptr;
  const TokenCounter* counter = nullptr;
};

/// Apply one code-switching type to a sentence that is pure in the
/// document's language. SentRepl yields the bare translation; SentAnnt
/// appends " (translation)" after the original; token types delegate to the
/// generator. Only the backend the type needs may be non-null. Throws
/// BackendError on backend failure.
std::string synthesize_sentence(std::string_view sentence, CsType cs_type,
                                const LanguagePair& pair, Side side,
                                const Translator* translator,
                                const TokenCsGenerator* generator);

/// Random-access document source so synthesis can visit documents in seeded
/// order without holding the corpus in memory.
class DocStore {
 public:
  struct Meta {
    std::string id;
    std::string lang;
  };

  virtual ~DocStore() = default;
  virtual std::size_t size() const = 0;
  virtual const Meta& meta(std::size_t index) const = 0;
  virtual Document get(std::size_t index) const = 0;
};

class MemoryDocStore : public DocStore {
 public:
  explicit MemoryDocStore(std::vector<Document> docs);
  std::size_t size() const override { return docs_.size(); }
  const Meta& meta(std::size_t index) const override { return metas_[index]; }
  Document get(std::size_t index) const override { return docs_[index]; }

 private:
  std::vector<Document> docs_;
  std::vector<Meta> metas_;
};

/// JSONL-backed store; scans line offsets up front and seeks on get().
class FileDocStore : public DocStore {
 public:
  explicit FileDocStore(std::string path);
  std::size_t size() const override { return metas_.size(); }
  const Meta& meta(std::size_t index) const override { return metas_[index]; }
  Document get(std::size_t index) const override;

 private:
  std::string path_;
  std::vector<Meta> metas_;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> lines_;  // offset, size
};

/// Documents eligible under the plan (language match, then the seeded
/// eligibility cap) are visited in seeded random order; within each, pure
/// same-language sentences are sampled at sentence_density and rewritten.
/// In budget mode the run stops at the first modification reaching the
/// budget. The sink receives every document in store order, modified or
/// not. Fully deterministic for a fixed (store, plan, backends) triple.
AccountingReport allocate_and_synthesize(
    const DocStore& store, const SynthesisPlan& plan, const LanguagePair& pair,
    const SynthesisBackends& backends,
    const std::function<void(const Document&)>& sink,
    const std::function<bool(std::size_t)>& doc_filter = nullptr);

/// Convenience in-memory wrapper.
std::pair<std::vector<Document>, AccountingReport> synthesize_corpus(
    const std::vector<Document>& docs, const SynthesisPlan& plan,
    const LanguagePair& pair, const SynthesisBackends& backends);

struct MixReport {
  std::vector<std::pair<Allocation, AccountingReport>> per_allocation;
  AccountingReport totals;
};

/// Run every allocation of the plan over its side's store. Documents are
/// partitioned across same-side allocations by hashing their ids into
/// budget-proportional bins, so no document receives two types. Sinks
/// receive each side's documents in store order.
MixReport execute_mix(const DocStore* primary_store,
                      const DocStore* secondary_store, const MixPlan& mix,
                      const LanguagePair& pair,
                      const SynthesisBackends& backends, std::uint64_t seed,
                      const std::function<void(const Document&)>& primary_sink,
                      const std::function<void(const Document&)>& secondary_sink);

// --- SFT export -----------------------------------------------------------

struct SftRecord {
  std::string instruction;
  std::string response;
  std::string task;       // "annotation" | "replacement"
  std::string lang_pair;  // e.g. "en-zh"
};

/// Instruction template for generating token-level code-switching from a
/// single source-language sentence. `task` picks annotation or replacement
/// wording; source_side names which language the sentence is in.
std::string sft_instruction(SegmentCategory task, const LanguagePair& pair,
                            Side source_side, std::string_view sentence);

/// Pair up parallel sentences with their generated code-switched outputs.
/// Only the source-side sentence enters the instruction. Throws ConfigError
/// on length mismatch.
std::vector<SftRecord> export_sft_records(
    const std::vector<std::pair<std::string, std::string>>& parallel_pairs,
    const std::vector<std::string>& generated, SegmentCategory task,
    const LanguagePair& pair, Side source_side);

std::string to_json_line(const SftRecord& record);

/// Display name used inside prompts ("en" -> "English").
std::string language_display_name(std::string_view code);

}  // namespace csw
