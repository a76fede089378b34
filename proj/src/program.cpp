// kgsynth - knowledge-powered programming-by-example synthesizer
// SPDX-License-Identifier: Apache-2.0

#include "program.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace kgsynth {

ProgramPtr Program::primitive(std::string name) {
    auto p = std::shared_ptr<Program>(new Program());
    p->kind_ = Kind::Primitive;
    p->name_ = std::move(name);
    return p;
}

ProgramPtr Program::variable(int index) {
    auto p = std::shared_ptr<Program>(new Program());
    p->kind_ = Kind::Variable;
    p->index_ = index;
    return p;
}

ProgramPtr Program::constant(std::string text, ConstantFlavor flavor) {
    auto p = std::shared_ptr<Program>(new Program());
    p->kind_ = Kind::Constant;
    p->name_ = std::move(text);
    p->flavor_ = flavor;
    return p;
}

ProgramPtr Program::kg_path(std::string path_id) {
    auto p = std::shared_ptr<Program>(new Program());
    p->kind_ = Kind::KgPath;
    p->name_ = std::move(path_id);
    return p;
}

ProgramPtr Program::apply(ProgramPtr function, ProgramPtr argument) {
    auto p = std::shared_ptr<Program>(new Program());
    p->kind_ = Kind::Apply;
    p->depth_ = 1 + std::max(function->depth(), argument->depth());
    p->fn_ = std::move(function);
    p->arg_ = std::move(argument);
    return p;
}

ProgramPtr Program::apply_chain(ProgramPtr head, const std::vector<ProgramPtr>& arguments) {
    ProgramPtr acc = std::move(head);
    for (const auto& arg : arguments) {
        acc = apply(acc, arg);
    }
    return acc;
}

ProgramPtr Program::spine_head() const {
    if (kind_ != Kind::Apply) {
        // Rebuilding the leaf is cheap and avoids enable_shared_from_this.
        switch (kind_) {
            case Kind::Primitive: return primitive(name_);
            case Kind::Variable: return variable(index_);
            case Kind::Constant: return constant(name_, flavor_);
            case Kind::KgPath: return kg_path(name_);
            default: break;
        }
    }
    ProgramPtr fn = fn_;
    while (fn->kind_ == Kind::Apply) {
        fn = fn->fn_;
    }
    return fn;
}

std::vector<ProgramPtr> Program::spine_arguments() const {
    std::vector<ProgramPtr> args;
    const Program* node = this;
    while (node->kind_ == Kind::Apply) {
        args.push_back(node->arg_);
        node = node->fn_.get();
    }
    std::reverse(args.begin(), args.end());
    return args;
}

bool Program::equals(const Program& other) const {
    if (this == &other) {
        return true;
    }
    if (kind_ != other.kind_) {
        return false;
    }
    switch (kind_) {
        case Kind::Primitive:
        case Kind::KgPath:
            return name_ == other.name_;
        case Kind::Variable:
            return index_ == other.index_;
        case Kind::Constant:
            return flavor_ == other.flavor_ && name_ == other.name_;
        case Kind::Apply:
            return fn_->equals(*other.fn_) && arg_->equals(*other.arg_);
    }
    return false;
}

bool program_equal(const ProgramPtr& a, const ProgramPtr& b) {
    if (a == b) {
        return true;
    }
    if (!a || !b) {
        return false;
    }
    return a->equals(*b);
}

std::string escape_text(const std::string& text) {
    std::string out;
    out.reserve(text.size() + 2);
    for (char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

namespace {

void render(const Program& p, std::string& out) {
    switch (p.kind()) {
        case Program::Kind::Primitive:
            out += p.name();
            return;
        case Program::Kind::Variable:
            out += "(var " + std::to_string(p.index()) + ")";
            return;
        case Program::Kind::Constant:
            out += (p.flavor() == ConstantFlavor::Input ? "(cst_in \"" : "(cst_out \"");
            out += escape_text(p.text());
            out += "\")";
            return;
        case Program::Kind::KgPath:
            out += "(kg_path \"" + escape_text(p.name()) + "\")";
            return;
        case Program::Kind::Apply: {
            out.push_back('(');
            render(*p.spine_head(), out);
            for (const auto& arg : p.spine_arguments()) {
                out.push_back(' ');
                render(*arg, out);
            }
            out.push_back(')');
            return;
        }
    }
}

struct Token {
    enum class Kind { LParen, RParen, Symbol, String, Number } kind;
    std::string text;
    long number = 0;
};

Result<std::vector<Token>> tokenize(const std::string& text) {
    std::vector<Token> tokens;
    size_t i = 0;
    const size_t n = text.size();
    while (i < n) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '(') {
            tokens.push_back({Token::Kind::LParen, "(", 0});
            ++i;
            continue;
        }
        if (c == ')') {
            tokens.push_back({Token::Kind::RParen, ")", 0});
            ++i;
            continue;
        }
        if (c == '"') {
            std::string s;
            ++i;
            bool closed = false;
            while (i < n) {
                char d = text[i];
                if (d == '\\' && i + 1 < n) {
                    char e = text[i + 1];
                    switch (e) {
                        case 'n': s.push_back('\n'); break;
                        case 't': s.push_back('\t'); break;
                        case 'r': s.push_back('\r'); break;
                        case '"': s.push_back('"'); break;
                        case '\\': s.push_back('\\'); break;
                        default:
                            return Error(ErrorCode::ParseError,
                                         std::string("unknown escape \\") + e);
                    }
                    i += 2;
                    continue;
                }
                if (d == '"') {
                    closed = true;
                    ++i;
                    break;
                }
                s.push_back(d);
                ++i;
            }
            if (!closed) {
                return Error(ErrorCode::ParseError, "unterminated string literal");
            }
            tokens.push_back({Token::Kind::String, std::move(s), 0});
            continue;
        }
        size_t start = i;
        while (i < n && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '(' &&
               text[i] != ')' && text[i] != '"') {
            ++i;
        }
        std::string sym = text.substr(start, i - start);
        bool numeric = !sym.empty() &&
                       std::all_of(sym.begin(), sym.end(),
                                   [](char d) { return std::isdigit(static_cast<unsigned char>(d)); });
        if (numeric) {
            tokens.push_back({Token::Kind::Number, sym, std::stol(sym)});
        } else {
            tokens.push_back({Token::Kind::Symbol, std::move(sym), 0});
        }
    }
    return tokens;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    Result<ProgramPtr> parse() {
        auto p = parse_form();
        if (!p.ok()) {
            return p;
        }
        if (pos_ != tokens_.size()) {
            return Error(ErrorCode::ParseError, "trailing tokens after program");
        }
        return p;
    }

private:
    Result<ProgramPtr> parse_form() {
        if (pos_ >= tokens_.size()) {
            return Error(ErrorCode::ParseError, "unexpected end of input");
        }
        const Token& tok = tokens_[pos_];
        if (tok.kind == Token::Kind::Symbol) {
            ++pos_;
            return ProgramPtr(Program::primitive(tok.text));
        }
        if (tok.kind != Token::Kind::LParen) {
            return Error(ErrorCode::ParseError, "expected '(' or symbol, got '" + tok.text + "'");
        }
        ++pos_;
        if (pos_ >= tokens_.size()) {
            return Error(ErrorCode::ParseError, "unexpected end of input after '('");
        }
        // Special leaf forms.
        if (tokens_[pos_].kind == Token::Kind::Symbol) {
            const std::string& head = tokens_[pos_].text;
            if (head == "var") {
                ++pos_;
                if (pos_ >= tokens_.size() || tokens_[pos_].kind != Token::Kind::Number) {
                    return Error(ErrorCode::ParseError, "(var ...) expects an index");
                }
                long idx = tokens_[pos_].number;
                ++pos_;
                if (!expect_rparen()) {
                    return Error(ErrorCode::ParseError, "(var ...) not closed");
                }
                return ProgramPtr(Program::variable(static_cast<int>(idx)));
            }
            if (head == "cst_in" || head == "cst_out") {
                ConstantFlavor flavor =
                    head == "cst_in" ? ConstantFlavor::Input : ConstantFlavor::Output;
                ++pos_;
                if (pos_ >= tokens_.size() || tokens_[pos_].kind != Token::Kind::String) {
                    return Error(ErrorCode::ParseError, "(" + head + " ...) expects a string");
                }
                std::string text = tokens_[pos_].text;
                ++pos_;
                if (!expect_rparen()) {
                    return Error(ErrorCode::ParseError, "(" + head + " ...) not closed");
                }
                return ProgramPtr(Program::constant(std::move(text), flavor));
            }
            if (head == "kg_path") {
                ++pos_;
                if (pos_ >= tokens_.size() || tokens_[pos_].kind != Token::Kind::String) {
                    return Error(ErrorCode::ParseError, "(kg_path ...) expects a string");
                }
                std::string id = tokens_[pos_].text;
                ++pos_;
                if (!expect_rparen()) {
                    return Error(ErrorCode::ParseError, "(kg_path ...) not closed");
                }
                return ProgramPtr(Program::kg_path(std::move(id)));
            }
        }
        // General application form: (head arg...).
        auto head = parse_form();
        if (!head.ok()) {
            return head;
        }
        ProgramPtr acc = head.take();
        while (pos_ < tokens_.size() && tokens_[pos_].kind != Token::Kind::RParen) {
            auto arg = parse_form();
            if (!arg.ok()) {
                return arg;
            }
            acc = Program::apply(acc, arg.take());
        }
        if (!expect_rparen()) {
            return Error(ErrorCode::ParseError, "application form not closed");
        }
        return acc;
    }

    bool expect_rparen() {
        if (pos_ < tokens_.size() && tokens_[pos_].kind == Token::Kind::RParen) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::vector<Token> tokens_;
    size_t pos_ = 0;
};

}  // namespace

std::string Program::to_sexpr() const {
    std::string out;
    render(*this, out);
    return out;
}

Result<ProgramPtr> parse_sexpr(const std::string& text) {
    auto tokens = tokenize(text);
    if (!tokens.ok()) {
        return tokens.error();
    }
    Parser parser(tokens.take());
    return parser.parse();
}

}  // namespace kgsynth
