// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#include "pretty.hpp"

#include <sstream>
#include <vector>

namespace kgsynth {

namespace {

std::string var_name(int index) {
    switch (index) {
        case 0: return "x";
        case 1: return "y";
        case 2: return "z";
        default: return "x" + std::to_string(index);
    }
}

std::string quote(const std::string& text) {
    return "\"" + escape_text(text) + "\"";
}

bool is_concat_head(const Program& head) {
    return head.kind() == Program::Kind::Primitive &&
           (head.name() == "concat" || head.name() == "concat_out");
}

// Function-call name for primitives whose DSL spelling is not an identifier.
std::string call_name(const std::string& primitive) {
    if (primitive == "$") return "regex_end";
    if (primitive == ".") return "regex_any";
    if (primitive == "[^_]+" || primitive == "[^_]+_in") return "not_chars";
    if (primitive == "[^_]+$" || primitive == "[^_]+$_in") return "not_chars_end";
    if (primitive == "concat_if_out") return "concat_if";
    return primitive;
}

std::vector<std::string> split_path_id(const std::string& path_id) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : path_id) {
        if (c == '/') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

std::string render_expr(const Program& p, bool parenthesize_concat);

std::string render_spine(const Program& p, bool parenthesize_concat) {
    ProgramPtr head = p.spine_head();
    std::vector<ProgramPtr> args = p.spine_arguments();
    if (head->kind() == Program::Kind::KgPath) {
        std::ostringstream out;
        out << "label(follow_edges_from(";
        if (args.size() == 1) {
            out << render_expr(*args[0], true);
        }
        for (const auto& rel : split_path_id(head->name())) {
            out << ", " << quote(rel);
        }
        out << "))";
        return out.str();
    }
    if (is_concat_head(*head) && args.size() == 2) {
        std::string text =
            render_expr(*args[0], true) + " + " + render_expr(*args[1], true);
        if (parenthesize_concat) {
            return "(" + text + ")";
        }
        return text;
    }
    std::ostringstream out;
    out << call_name(head->name()) << "(";
    for (size_t i = 0; i < args.size(); ++i) {
        if (i > 0) {
            out << ", ";
        }
        out << render_expr(*args[i], false);
    }
    out << ")";
    return out.str();
}

std::string render_expr(const Program& p, bool parenthesize_concat) {
    switch (p.kind()) {
        case Program::Kind::Variable:
            return var_name(p.index());
        case Program::Kind::Constant:
            return quote(p.text());
        case Program::Kind::Primitive:
            if (p.name() == "$" || p.name() == ".") {
                return call_name(p.name()) + "()";
            }
            return call_name(p.name());
        case Program::Kind::KgPath:
            return "follow_edges_from_path";  // unapplied; does not occur in full programs
        case Program::Kind::Apply:
            return render_spine(p, parenthesize_concat);
    }
    return "?";
}

// Collects the operands of the outermost concatenation chain.
void collect_operands(const Program& p, std::vector<const Program*>& out) {
    if (p.kind() == Program::Kind::Apply) {
        ProgramPtr head = p.spine_head();
        std::vector<ProgramPtr> args = p.spine_arguments();
        if (is_concat_head(*head) && args.size() == 2) {
            collect_operands(*args[0], out);
            collect_operands(*args[1], out);
            return;
        }
    }
    out.push_back(&p);
}

std::string binding_name(size_t i) {
    std::string name;
    size_t k = i;
    do {
        name.insert(name.begin(), static_cast<char>('a' + k % 26));
        k = k / 26;
    } while (k-- > 0);
    return name;
}

}  // namespace

std::string pretty_print(const Program& program, int arity) {
    std::ostringstream out;
    out << "def f(";
    for (int i = 0; i < arity; ++i) {
        if (i > 0) {
            out << ", ";
        }
        out << var_name(i) << ": str";
    }
    out << ") -> str:\n";

    std::vector<const Program*> operands;
    collect_operands(program, operands);
    if (operands.size() == 1) {
        out << "    return " << render_expr(*operands[0], false) << "\n";
        return out.str();
    }
    for (size_t i = 0; i < operands.size(); ++i) {
        out << "    " << binding_name(i) << " = " << render_expr(*operands[i], false) << "\n";
    }
    out << "    return ";
    for (size_t i = 0; i < operands.size(); ++i) {
        if (i > 0) {
            out << " + ";
        }
        out << binding_name(i);
    }
    out << "\n";
    return out.str();
}

}  // namespace kgsynth
