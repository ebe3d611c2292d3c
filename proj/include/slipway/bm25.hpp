#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace slipway {

struct IssueDoc;

// Lowercases and splits on non-alphanumeric characters, except that '.' and
// '_' are kept when they sit between alphanumerics, so identifiers like
// "requirements.txt" or "torch_geometric" survive as single terms. Error
// class names ("ModuleNotFoundError") are single terms already since case is
// not a split boundary.
std::vector<std::string> tokenize(std::string_view text);

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

struct RetrievalHit {
  std::int64_t doc_id = 0;
  double score = 0.0;
  std::string snippet;
};

// In-memory inverted index over one repository's issue corpus. Immutable
// after build; concurrent searches are safe.
//
// Scoring is Okapi BM25 with the non-negative IDF variant
//   idf(t) = ln((N - n_t + 0.5) / (n_t + 0.5) + 1)
// summed over query tokens in sequence order (duplicated query terms count
// twice). Zero-score documents are never returned; ties break by ascending
// doc id.
class Bm25Index {
 public:
  Bm25Index() = default;

  std::size_t doc_count() const { return doc_lengths_.size(); }
  double avg_doc_len() const { return avg_doc_len_; }
  const Bm25Params& params() const { return params_; }
  std::size_t doc_length(std::int64_t doc_id) const;

  std::vector<RetrievalHit> search(std::string_view query, std::size_t k) const;

  // Raw document text, used for hit snippets and repair prompts.
  const std::string& doc_text(std::int64_t doc_id) const;

  friend Bm25Index build_index(const std::vector<IssueDoc>& docs, Bm25Params params);

 private:
  struct Posting {
    std::int64_t doc_id;
    std::int32_t term_freq;
  };

  Bm25Params params_;
  double avg_doc_len_ = 0.0;
  std::unordered_map<std::string, std::vector<Posting>> postings_;
  std::map<std::int64_t, std::size_t> doc_lengths_;
  std::unordered_map<std::int64_t, std::string> doc_texts_;

  static constexpr std::size_t kSnippetChars = 500;
};

// Document text is title, body, and comments concatenated. Throws
// duplicate-doc-id when two docs share an id.
Bm25Index build_index(const std::vector<IssueDoc>& docs, Bm25Params params = {});

}  // namespace slipway
