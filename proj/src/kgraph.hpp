// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#ifndef KGSYNTH_KGRAPH_HPP
#define KGSYNTH_KGRAPH_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "eval.hpp"

namespace kgsynth {

struct Triple {
    std::string subject;
    std::string relation;
    std::string object;

    bool operator<(const Triple& other) const {
        if (subject != other.subject) return subject < other.subject;
        if (relation != other.relation) return relation < other.relation;
        return object < other.object;
    }
};

// Ordered list of relation names; following it from an entity walks forward
// edges only. Rendered "R1-R2" in diagnostics.
struct RelationPath {
    std::vector<std::string> relations;

    std::string render() const;
    bool operator<(const RelationPath& other) const { return relations < other.relations; }
    bool operator==(const RelationPath& other) const { return relations == other.relations; }
};

// Serialization used by KgPath program leaves: relations joined by '/'.
std::string path_to_id(const RelationPath& path);
RelationPath path_from_id(const std::string& id);

// Immutable triple store with forward and backward indexes. Entity matching
// is exact, case-sensitive label equality.
class KnowledgeGraph {
public:
    KnowledgeGraph() = default;

    static KnowledgeGraph from_triples(const std::vector<Triple>& triples);
    // Text format: one 'subject<TAB>relation<TAB>object' per line; lines
    // starting with '#' and blank lines are skipped.
    static Result<KnowledgeGraph> load_file(const std::string& path);
    static Result<KnowledgeGraph> parse(const std::string& text);

    size_t triple_count() const { return triples_.size(); }
    size_t entity_count() const { return entities_.size(); }
    bool has_entity(const std::string& label) const { return entities_.count(label) != 0; }
    const std::set<std::string>& entities() const { return entities_; }
    const std::set<Triple>& triples() const { return triples_; }
    std::vector<std::string> relation_names() const;

    // Entities reachable from `start` by following the path's relations in
    // order; empty for unknown entities.
    std::vector<std::string> follow_path(const std::string& start, const RelationPath& path) const;
    // Forward neighbors grouped by relation; empty map for unknown entities.
    const std::map<std::string, std::vector<std::string>>* forward(const std::string& entity) const;

    // All relation paths consistent with every (source, target) pair, probed
    // at increasing lengths; the first length with any hit wins. Paths come
    // back lexicographically sorted.
    Result<std::vector<RelationPath>> find_paths(
        const std::vector<std::pair<std::string, std::string>>& pairs, int max_len) const;

    // Total number of entities reached from all sources through the path.
    size_t count_hits(const RelationPath& path, const std::vector<std::string>& sources) const;

    // Path with the fewest hits across the sources; lexicographic tie-break.
    Result<RelationPath> least_ambiguous(const std::vector<RelationPath>& paths,
                                         const std::vector<std::string>& sources) const;

private:
    std::set<Triple> triples_;
    std::set<std::string> entities_;
    // subject -> relation -> objects (sorted)
    std::map<std::string, std::map<std::string, std::vector<std::string>>> forward_;
    // object -> relation -> subjects (sorted)
    std::map<std::string, std::map<std::string, std::vector<std::string>>> backward_;

    void index();
};

// SPARQL text for the path-discovery query at a given distance, one triple
// chain per example pair; entity labels have spaces replaced by underscores.
std::string emit_sparql(const std::vector<std::pair<std::string, std::string>>& pairs, int length);

// SPARQL text for the hit-counting query of a concrete path from one source.
std::string emit_hits_sparql(const std::string& source, const RelationPath& path);

// KgEnv backed by a graph: path ids resolve through follow_path.
class GraphPathEnv : public KgEnv {
public:
    explicit GraphPathEnv(const KnowledgeGraph& graph) : graph_(&graph) {}

    std::vector<std::string> resolve(const std::string& path_id,
                                     const std::string& entity) const override {
        return graph_->follow_path(entity, path_from_id(path_id));
    }

private:
    const KnowledgeGraph* graph_;
};

}  // namespace kgsynth

#endif
