#include "slipway/bm25.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "slipway/error.hpp"
#include "slipway/ingest.hpp"

namespace slipway {

namespace {

bool is_word_char(unsigned char c) { return std::isalnum(c) != 0; }

// '.' and '_' join a token only when flanked by alphanumerics.
bool is_joiner(std::string_view text, std::size_t i) {
  char c = text[i];
  if (c != '.' && c != '_') {
    return false;
  }
  return i > 0 && i + 1 < text.size() && is_word_char(text[i - 1]) &&
         is_word_char(text[i + 1]);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> terms;
  std::string current;
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (is_word_char(c) || is_joiner(text, i)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      terms.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) {
    terms.push_back(std::move(current));
  }
  return terms;
}

Bm25Index build_index(const std::vector<IssueDoc>& docs, Bm25Params params) {
  Bm25Index index;
  index.params_ = params;
  std::size_t total_len = 0;
  for (const IssueDoc& doc : docs) {
    if (index.doc_lengths_.count(doc.issue_id) > 0) {
      throw Error(Errc::duplicate_doc_id, "issue id " + std::to_string(doc.issue_id));
    }
    std::string text = doc.title + "\n" + doc.body;
    for (const std::string& comment : doc.comments) {
      text += "\n" + comment;
    }
    std::vector<std::string> terms = tokenize(text);
    index.doc_lengths_[doc.issue_id] = terms.size();
    total_len += terms.size();

    std::unordered_map<std::string, std::int32_t> freqs;
    for (const std::string& term : terms) {
      ++freqs[term];
    }
    for (const auto& [term, freq] : freqs) {
      index.postings_[term].push_back({doc.issue_id, freq});
    }
    index.doc_texts_[doc.issue_id] = std::move(text);
  }
  index.avg_doc_len_ =
      docs.empty() ? 0.0 : static_cast<double>(total_len) / static_cast<double>(docs.size());
  for (auto& [term, list] : index.postings_) {
    std::sort(list.begin(), list.end(),
              [](const auto& a, const auto& b) { return a.doc_id < b.doc_id; });
  }
  return index;
}

std::size_t Bm25Index::doc_length(std::int64_t doc_id) const {
  auto it = doc_lengths_.find(doc_id);
  return it == doc_lengths_.end() ? 0 : it->second;
}

const std::string& Bm25Index::doc_text(std::int64_t doc_id) const {
  static const std::string empty;
  auto it = doc_texts_.find(doc_id);
  return it == doc_texts_.end() ? empty : it->second;
}

std::vector<RetrievalHit> Bm25Index::search(std::string_view query, std::size_t k) const {
  std::vector<RetrievalHit> hits;
  if (doc_lengths_.empty() || k == 0) {
    return hits;
  }
  const double n_docs = static_cast<double>(doc_lengths_.size());
  std::map<std::int64_t, double> scores;
  for (const std::string& term : tokenize(query)) {
    auto it = postings_.find(term);
    if (it == postings_.end()) {
      continue;
    }
    const auto& list = it->second;
    double idf = std::log((n_docs - static_cast<double>(list.size()) + 0.5) /
                              (static_cast<double>(list.size()) + 0.5) +
                          1.0);
    for (const Posting& posting : list) {
      double tf = static_cast<double>(posting.term_freq);
      double dl = static_cast<double>(doc_lengths_.at(posting.doc_id));
      double norm = params_.k1 * (1.0 - params_.b + params_.b * dl / avg_doc_len_);
      scores[posting.doc_id] += idf * (tf * (params_.k1 + 1.0)) / (tf + norm);
    }
  }
  for (const auto& [doc_id, score] : scores) {
    if (score > 0.0) {
      const std::string& text = doc_texts_.at(doc_id);
      hits.push_back({doc_id, score, text.substr(0, std::min(text.size(), kSnippetChars))});
    }
  }
  std::stable_sort(hits.begin(), hits.end(), [](const RetrievalHit& a, const RetrievalHit& b) {
    if (a.score != b.score) {
      return a.score > b.score;
    }
    return a.doc_id < b.doc_id;
  });
  if (hits.size() > k) {
    hits.resize(k);
  }
  return hits;
}

}  // namespace slipway
