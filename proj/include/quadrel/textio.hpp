#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "quadrel/balance.hpp"
#include "quadrel/modal.hpp"
#include "quadrel/relation.hpp"

namespace quadrel::textio {

/// Relation text format (LF line endings, single-space separators,
/// # starts a comment):
///   universe N
///   labels a b c ...          (optional)
///   implicit-reflexive        (optional; frames only)
///   rel NAME
///   i j                       (0-based, one edge per line)
///   val ATOM                  (models only)
///   i                         (one world per line)
struct NamedRelation {
  std::string name;
  Relation rel;
};

struct RelationDocument {
  Universe universe{1};
  bool implicit_reflexive = false;
  std::vector<NamedRelation> relations;
  std::vector<std::pair<std::string, Bitset>> valuations;

  const Relation* find(const std::string& name) const;
};

RelationDocument parse_document(const std::string& text);
RelationDocument load_document(const std::string& path);

/// Canonical rendering: sections in document order, edges sorted, exactly
/// one space between tokens, LF endings.
std::string write_document(const RelationDocument& doc);

/// First relation of the document (the common one-relation-per-file case).
Relation single_relation(const RelationDocument& doc);

/// Requires sections named R+ and R-; implicit-reflexive adds the diagonal
/// to R+ on load.
balance::SignedFrame frame_from_document(const RelationDocument& doc);
balance::SignedFrame load_frame(const std::string& path);
std::string write_frame(const balance::SignedFrame& f);

modal::KripkeModel model_from_document(const RelationDocument& doc);
modal::KripkeModel load_model(const std::string& path);

}  // namespace quadrel::textio
