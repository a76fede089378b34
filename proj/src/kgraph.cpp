// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#include "kgraph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace kgsynth {

std::string RelationPath::render() const {
    std::string out;
    for (size_t i = 0; i < relations.size(); ++i) {
        if (i > 0) {
            out.push_back('-');
        }
        out += relations[i];
    }
    return out;
}

std::string path_to_id(const RelationPath& path) {
    std::string out;
    for (size_t i = 0; i < path.relations.size(); ++i) {
        if (i > 0) {
            out.push_back('/');
        }
        out += path.relations[i];
    }
    return out;
}

RelationPath path_from_id(const std::string& id) {
    RelationPath path;
    std::string cur;
    for (char c : id) {
        if (c == '/') {
            path.relations.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    path.relations.push_back(cur);
    return path;
}

void KnowledgeGraph::index() {
    entities_.clear();
    forward_.clear();
    backward_.clear();
    for (const auto& t : triples_) {
        entities_.insert(t.subject);
        entities_.insert(t.object);
        forward_[t.subject][t.relation].push_back(t.object);
        backward_[t.object][t.relation].push_back(t.subject);
    }
    for (auto& [subject, by_rel] : forward_) {
        for (auto& [rel, objects] : by_rel) {
            std::sort(objects.begin(), objects.end());
            objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
        }
    }
    for (auto& [object, by_rel] : backward_) {
        for (auto& [rel, subjects] : by_rel) {
            std::sort(subjects.begin(), subjects.end());
            subjects.erase(std::unique(subjects.begin(), subjects.end()), subjects.end());
        }
    }
}

KnowledgeGraph KnowledgeGraph::from_triples(const std::vector<Triple>& triples) {
    KnowledgeGraph g;
    g.triples_.insert(triples.begin(), triples.end());
    g.index();
    return g;
}

Result<KnowledgeGraph> KnowledgeGraph::parse(const std::string& text) {
    KnowledgeGraph g;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const size_t tab1 = line.find('\t');
        const size_t tab2 = tab1 == std::string::npos ? std::string::npos
                                                      : line.find('\t', tab1 + 1);
        if (tab1 == std::string::npos || tab2 == std::string::npos ||
            line.find('\t', tab2 + 1) != std::string::npos) {
            return Error(ErrorCode::ParseError,
                         "line " + std::to_string(line_no) + ": expected 3 tab-separated fields");
        }
        Triple t;
        t.subject = line.substr(0, tab1);
        t.relation = line.substr(tab1 + 1, tab2 - tab1 - 1);
        t.object = line.substr(tab2 + 1);
        if (t.subject.empty() || t.relation.empty() || t.object.empty()) {
            return Error(ErrorCode::ParseError,
                         "line " + std::to_string(line_no) + ": empty field");
        }
        g.triples_.insert(std::move(t));
    }
    if (g.triples_.empty()) {
        return Error(ErrorCode::EmptyGraph, "no triples");
    }
    g.index();
    return g;
}

Result<KnowledgeGraph> KnowledgeGraph::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        return Error(ErrorCode::IoError, "cannot open graph file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    auto g = parse(buffer.str());
    if (!g.ok()) {
        return Error(g.error().code, path + ": " + g.error().message);
    }
    return g;
}

std::vector<std::string> KnowledgeGraph::relation_names() const {
    std::set<std::string> names;
    for (const auto& t : triples_) {
        names.insert(t.relation);
    }
    return {names.begin(), names.end()};
}

const std::map<std::string, std::vector<std::string>>* KnowledgeGraph::forward(
    const std::string& entity) const {
    auto it = forward_.find(entity);
    return it == forward_.end() ? nullptr : &it->second;
}

std::vector<std::string> KnowledgeGraph::follow_path(const std::string& start,
                                                     const RelationPath& path) const {
    std::set<std::string> frontier{start};
    for (const auto& rel : path.relations) {
        std::set<std::string> next;
        for (const auto& entity : frontier) {
            auto it = forward_.find(entity);
            if (it == forward_.end()) {
                continue;
            }
            auto rel_it = it->second.find(rel);
            if (rel_it == it->second.end()) {
                continue;
            }
            next.insert(rel_it->second.begin(), rel_it->second.end());
        }
        frontier = std::move(next);
        if (frontier.empty()) {
            break;
        }
    }
    return {frontier.begin(), frontier.end()};
}

namespace {

// Collects every relation sequence of exactly `len` steps from `entity` that
// reaches `target`.
void sequences_reaching(const KnowledgeGraph& g, const std::string& entity,
                        const std::string& target, int len, std::vector<std::string>& prefix,
                        std::set<RelationPath>& out) {
    if (len == 0) {
        if (entity == target) {
            out.insert(RelationPath{prefix});
        }
        return;
    }
    const auto* edges = g.forward(entity);
    if (edges == nullptr) {
        return;
    }
    for (const auto& [rel, objects] : *edges) {
        prefix.push_back(rel);
        for (const auto& obj : objects) {
            sequences_reaching(g, obj, target, len - 1, prefix, out);
        }
        prefix.pop_back();
    }
}

}  // namespace

Result<std::vector<RelationPath>> KnowledgeGraph::find_paths(
    const std::vector<std::pair<std::string, std::string>>& pairs, int max_len) const {
    if (pairs.empty()) {
        return Error(ErrorCode::InvalidArgument, "find_paths needs at least one pair");
    }
    if (max_len < 1) {
        return Error(ErrorCode::InvalidArgument, "max_len must be at least 1");
    }
    for (int len = 1; len <= max_len; ++len) {
        std::set<RelationPath> candidates;
        std::vector<std::string> prefix;
        sequences_reaching(*this, pairs[0].first, pairs[0].second, len, prefix, candidates);
        std::vector<RelationPath> consistent;
        for (const auto& path : candidates) {
            bool all = true;
            for (size_t i = 1; i < pairs.size(); ++i) {
                const auto reached = follow_path(pairs[i].first, path);
                if (std::find(reached.begin(), reached.end(), pairs[i].second) == reached.end()) {
                    all = false;
                    break;
                }
            }
            if (all) {
                consistent.push_back(path);
            }
        }
        if (!consistent.empty()) {
            return consistent;  // already sorted via the set
        }
    }
    return Error(ErrorCode::NoPath,
                 "no consistent path up to length " + std::to_string(max_len));
}

size_t KnowledgeGraph::count_hits(const RelationPath& path,
                                  const std::vector<std::string>& sources) const {
    size_t total = 0;
    for (const auto& source : sources) {
        total += follow_path(source, path).size();
    }
    return total;
}

Result<RelationPath> KnowledgeGraph::least_ambiguous(const std::vector<RelationPath>& paths,
                                                     const std::vector<std::string>& sources) const {
    if (paths.empty()) {
        return Error(ErrorCode::InvalidArgument, "least_ambiguous needs candidates");
    }
    size_t best_idx = 0;
    size_t best_hits = count_hits(paths[0], sources);
    for (size_t i = 1; i < paths.size(); ++i) {
        const size_t hits = count_hits(paths[i], sources);
        if (hits < best_hits || (hits == best_hits && paths[i] < paths[best_idx])) {
            best_idx = i;
            best_hits = hits;
        }
    }
    return paths[best_idx];
}

namespace {

std::string sparql_escape(const std::string& label) {
    std::string out = label;
    std::replace(out.begin(), out.end(), ' ', '_');
    return out;
}

}  // namespace

std::string emit_sparql(const std::vector<std::pair<std::string, std::string>>& pairs,
                        int length) {
    std::ostringstream out;
    out << "PREFIX w: <https://en.wikipedia.org/wiki/>\n";
    out << "SELECT";
    for (int p = 0; p < length; ++p) {
        out << " ?p" << p;
    }
    out << " WHERE {\n";
    for (size_t i = 0; i < pairs.size(); ++i) {
        const std::string src = "w:" + sparql_escape(pairs[i].first);
        const std::string dst = "w:" + sparql_escape(pairs[i].second);
        const std::string example = std::to_string(i + 1);
        if (length == 1) {
            out << "   " << src << " ?p0 " << dst << " .\n";
            continue;
        }
        out << "   " << src << " ?p0 ?o_" << example << "_0 .\n";
        for (int p = 1; p < length - 1; ++p) {
            out << "   ?o_" << example << "_" << (p - 1) << " ?p" << p << " ?o_" << example
                << "_" << p << " .\n";
        }
        out << "   ?o_" << example << "_" << (length - 2) << " ?p" << (length - 1) << " " << dst
            << " .\n";
    }
    out << "}\n";
    return out.str();
}

std::string emit_hits_sparql(const std::string& source, const RelationPath& path) {
    std::ostringstream out;
    const size_t len = path.relations.size();
    out << "PREFIX w: <https://en.wikipedia.org/wiki/>\n";
    out << "SELECT ?dst WHERE {\n";
    const std::string src = "w:" + sparql_escape(source);
    if (len == 1) {
        out << "   " << src << " w:" << sparql_escape(path.relations[0]) << " ?dst .\n";
    } else {
        out << "   " << src << " w:" << sparql_escape(path.relations[0]) << " ?e0 .\n";
        for (size_t i = 1; i < len; ++i) {
            const std::string obj = (i + 1 == len) ? "?dst" : "?e" + std::to_string(i);
            out << "   ?e" << (i - 1) << " w:" << sparql_escape(path.relations[i]) << " " << obj
                << " .\n";
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace kgsynth
