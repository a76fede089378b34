// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#ifndef KGSYNTH_PROGRAM_HPP
#define KGSYNTH_PROGRAM_HPP

#include <memory>
#include <string>
#include <vector>

#include "error.hpp"

namespace kgsynth {

class Program;
using ProgramPtr = std::shared_ptr<const Program>;

enum class ConstantFlavor {
    Input,
    Output,
};

// Immutable program AST. Applications are curried: a call f(a, b) is
// Apply(Apply(f, a), b).
class Program {
public:
    enum class Kind {
        Primitive,
        Variable,
        Constant,
        KgPath,
        Apply,
    };

    static ProgramPtr primitive(std::string name);
    static ProgramPtr variable(int index);
    static ProgramPtr constant(std::string text, ConstantFlavor flavor);
    static ProgramPtr kg_path(std::string path_id);
    static ProgramPtr apply(ProgramPtr function, ProgramPtr argument);
    // Left-nested application of `head` to `arguments`.
    static ProgramPtr apply_chain(ProgramPtr head, const std::vector<ProgramPtr>& arguments);

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }  // Primitive / KgPath
    const std::string& text() const { return name_; }  // Constant
    int index() const { return index_; }               // Variable
    ConstantFlavor flavor() const { return flavor_; }
    const ProgramPtr& function() const { return fn_; }
    const ProgramPtr& argument() const { return arg_; }

    // Depth of the curried AST: leaves are 1, Apply is 1 + max of children.
    int depth() const { return depth_; }

    bool is_leaf() const { return kind_ != Kind::Apply; }

    // Spine view: the leaf at the head of the application chain plus the
    // arguments in application order. For a leaf, head is the node itself
    // and the argument list is empty.
    ProgramPtr spine_head() const;
    std::vector<ProgramPtr> spine_arguments() const;

    bool equals(const Program& other) const;

    // Canonical S-expression, e.g. (concat (var 0) (cst_out " USD")).
    std::string to_sexpr() const;

private:
    Program() = default;

    Kind kind_ = Kind::Primitive;
    std::string name_;
    int index_ = 0;
    ConstantFlavor flavor_ = ConstantFlavor::Output;
    ProgramPtr fn_;
    ProgramPtr arg_;
    int depth_ = 1;
};

bool program_equal(const ProgramPtr& a, const ProgramPtr& b);

// Escapes ", \, newline, tab and CR; everything else passes through.
std::string escape_text(const std::string& text);

Result<ProgramPtr> parse_sexpr(const std::string& text);

}  // namespace kgsynth

#endif
