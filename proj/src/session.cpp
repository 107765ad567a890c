#include "rostlab/session.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace rostlab {

namespace {

struct Token {
    enum Kind { Num, Ident, Sym } kind;
    std::string text;
    long long num = 0;
};

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < s.size()) {
        char ch = s[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            Token t{Token::Num, s.substr(i, j - i), 0};
            t.num = std::stoll(t.text);
            out.push_back(std::move(t));
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            out.push_back({Token::Ident, s.substr(i, j - i), 0});
            i = j;
            continue;
        }
        if (std::string("{}(),+-*/^").find(ch) != std::string::npos) {
            out.push_back({Token::Sym, std::string(1, ch), 0});
            ++i;
            continue;
        }
        fail("ParseError", "unexpected character '" + std::string(1, ch) + "'");
    }
    return out;
}

bool is_sym(const std::vector<Token>& t, size_t i, const char* s) {
    return i < t.size() && t[i].kind == Token::Sym && t[i].text == s;
}

std::vector<size_t> match_brackets(const std::vector<Token>& t) {
    std::vector<size_t> match(t.size(), 0);
    std::vector<size_t> stack;
    for (size_t i = 0; i < t.size(); ++i) {
        if (is_sym(t, i, "(") || is_sym(t, i, "{")) {
            stack.push_back(i);
        } else if (is_sym(t, i, ")") || is_sym(t, i, "}")) {
            if (stack.empty()) fail("ParseError", "unbalanced brackets");
            size_t o = stack.back();
            stack.pop_back();
            if ((t[o].text == "(") != (t[i].text == ")"))
                fail("ParseError", "mismatched brackets");
            match[o] = i;
        }
    }
    if (!stack.empty()) fail("ParseError", "unbalanced brackets");
    return match;
}

// Recursive-descent element parser over a token range.  Precedence,
// loosest to tightest: + -, * /, unary -, ^.
class ElementParser {
public:
    ElementParser(const std::vector<Token>& t, const std::vector<size_t>& match,
                  const TowerField& F)
        : t_(t), match_(match), F_(F) {}

    FieldElement parse(size_t lo, size_t hi) {
        pos_ = lo;
        end_ = hi;
        if (lo >= hi) fail("ParseError", "empty element expression");
        FieldElement v = sum();
        if (pos_ != end_) fail("ParseError", "trailing tokens in element expression");
        return v;
    }

private:
    FieldElement sum() {
        FieldElement v = product();
        while (pos_ < end_ && (is_sym(t_, pos_, "+") || is_sym(t_, pos_, "-"))) {
            bool plus = t_[pos_].text == "+";
            ++pos_;
            FieldElement w = product();
            v = plus ? v + w : v - w;
        }
        return v;
    }

    FieldElement product() {
        FieldElement v = unary();
        while (pos_ < end_ && (is_sym(t_, pos_, "*") || is_sym(t_, pos_, "/"))) {
            bool mul = t_[pos_].text == "*";
            ++pos_;
            FieldElement w = unary();
            v = mul ? v * w : v / w;
        }
        return v;
    }

    FieldElement unary() {
        if (pos_ < end_ && is_sym(t_, pos_, "-")) {
            ++pos_;
            return -unary();
        }
        return power();
    }

    FieldElement power() {
        FieldElement v = atom();
        if (pos_ < end_ && is_sym(t_, pos_, "^")) {
            ++pos_;
            long long sign = 1;
            if (pos_ < end_ && is_sym(t_, pos_, "-")) {
                sign = -1;
                ++pos_;
            }
            if (pos_ >= end_ || t_[pos_].kind != Token::Num)
                fail("ParseError", "exponent must be an integer");
            v = v.pow(sign * t_[pos_].num);
            ++pos_;
        }
        return v;
    }

    FieldElement atom() {
        if (pos_ >= end_) fail("ParseError", "element expression ends unexpectedly");
        const Token& tk = t_[pos_];
        if (tk.kind == Token::Num) {
            ++pos_;
            int q = F_.q();
            return F_.scalar(static_cast<int>(((tk.num % q) + q) % q));
        }
        if (tk.kind == Token::Ident) {
            ++pos_;
            if (tk.text == "zeta" || tk.text == "u" || tk.text == "z")
                return F_.zeta();
            if (tk.text.size() > 1 && tk.text[0] == 'x') {
                int k = 0;
                for (size_t i = 1; i < tk.text.size(); ++i) {
                    if (!std::isdigit(static_cast<unsigned char>(tk.text[i])))
                        fail("ParseError", "unknown generator '" + tk.text + "'");
                    k = k * 10 + (tk.text[i] - '0');
                }
                if (k < 1 || k > F_.depth())
                    fail("ParseError", "no uniformizer '" + tk.text + "' at depth " +
                                           std::to_string(F_.depth()));
                return F_.uniformizer(k);
            }
            fail("ParseError", "unknown generator '" + tk.text + "'");
        }
        if (is_sym(t_, pos_, "(")) {
            size_t close = match_[pos_];
            size_t save_end = end_;
            pos_ += 1;
            end_ = close;
            FieldElement v = sum();
            if (pos_ != close) fail("ParseError", "trailing tokens in parentheses");
            pos_ = close + 1;
            end_ = save_end;
            return v;
        }
        fail("ParseError", "unexpected token '" + tk.text + "'");
    }

    const std::vector<Token>& t_;
    const std::vector<size_t>& match_;
    const TowerField& F_;
    size_t pos_ = 0;
    size_t end_ = 0;
};

const CohClass& value_class(const EvalValue& v, const char* op) {
    if (!v.cls)
        fail("ParseError", std::string(op) + " cannot take a decomposition");
    return *v.cls;
}

// Eval expressions.  parse_one(lo, scope_end) consumes one value and
// reports where it stopped; 'class' is greedy to the end of its scope
// except for a trailing field handle, so composite uses parenthesize.
class EvalParser {
public:
    EvalParser(const Session& s, const std::vector<Token>& t,
               const std::vector<size_t>& match)
        : s_(s), t_(t), match_(match) {}

    EvalValue run() {
        auto [v, next] = parse_one(0, t_.size());
        if (next != t_.size()) fail("ParseError", "trailing tokens after expression");
        return v;
    }

private:
    std::pair<EvalValue, size_t> parse_one(size_t lo, size_t scope_end) {
        if (lo >= scope_end) fail("ParseError", "expression ends unexpectedly");
        if (is_sym(t_, lo, "(")) {
            size_t close = match_[lo];
            auto [v, next] = parse_one(lo + 1, close);
            if (next != close) fail("ParseError", "trailing tokens in parentheses");
            return {std::move(v), close + 1};
        }
        if (t_[lo].kind != Token::Ident)
            fail("ParseError", "expected an operation, got '" + t_[lo].text + "'");
        const std::string& op = t_[lo].text;

        if (op == "symbol") return parse_symbol(lo, scope_end);
        if (op == "class") return parse_class(lo, scope_end);
        if (op == "residue") {
            auto [v, next] = parse_one(lo + 1, scope_end);
            const CohClass& c = value_class(v, "residue");
            if (c.field().depth() == 0)
                fail("ParseError", "residue needs a field of positive depth");
            EvalValue out;
            out.kind = EvalValue::Kind::Class;
            out.cls = c.residue();
            return {std::move(out), next};
        }
        if (op == "decompose") {
            auto [v, next] = parse_one(lo + 1, scope_end);
            const CohClass& c = value_class(v, "decompose");
            if (c.field().depth() == 0)
                fail("ParseError", "decompose needs a field of positive depth");
            EvalValue out;
            out.kind = EvalValue::Kind::Pair;
            out.parts = c.decompose();
            return {std::move(out), next};
        }
        if (op == "cup") {
            auto [a, p] = parse_one(lo + 1, scope_end);
            auto [b, next] = parse_one(p, scope_end);
            const CohClass& ac = value_class(a, "cup");
            const CohClass& bc = value_class(b, "cup");
            if (bc.degree() != 1)
                fail("ParseError", "cup needs a degree-1 second operand");
            EvalValue out;
            out.kind = EvalValue::Kind::Class;
            out.cls = ac.cup(bc.as_class_vector());
            return {std::move(out), next};
        }
        fail("ParseError", "unknown operation '" + op + "'");
    }

    std::pair<EvalValue, size_t> parse_symbol(size_t lo, size_t scope_end) {
        if (!is_sym(t_, lo + 1, "{"))
            fail("ParseError", "symbol needs a braced element list");
        size_t close = match_[lo + 1];
        size_t next = close + 1;
        const TowerField* F = &s_.current_field();
        if (next < scope_end && t_[next].kind == Token::Ident &&
            s_.has_field(t_[next].text)) {
            F = &s_.field(t_[next].text);
            ++next;
        }
        // split (lo+2, close) on top-level commas
        std::vector<std::pair<size_t, size_t>> spans;
        size_t start = lo + 2;
        for (size_t i = lo + 2; i < close;) {
            if (is_sym(t_, i, "(")) {
                i = match_[i] + 1;
                continue;
            }
            if (is_sym(t_, i, ",")) {
                spans.emplace_back(start, i);
                start = i + 1;
            }
            ++i;
        }
        spans.emplace_back(start, close);
        std::vector<FieldElement> entries;
        ElementParser ep(t_, match_, *F);
        for (auto [a, b] : spans) entries.push_back(ep.parse(a, b));
        EvalValue out;
        out.kind = EvalValue::Kind::Class;
        out.cls = CohClass::symbol(entries);
        return {std::move(out), next};
    }

    std::pair<EvalValue, size_t> parse_class(size_t lo, size_t scope_end) {
        size_t hi = scope_end;
        const TowerField* F = &s_.current_field();
        if (hi - (lo + 1) >= 2 && t_[hi - 1].kind == Token::Ident &&
            s_.has_field(t_[hi - 1].text)) {
            F = &s_.field(t_[hi - 1].text);
            --hi;
        }
        ElementParser ep(t_, match_, *F);
        FieldElement e = ep.parse(lo + 1, hi);
        if (e.is_zero()) fail("ParseError", "class of zero is undefined");
        EvalValue out;
        out.kind = EvalValue::Kind::Vector;
        out.cls = CohClass::from_coeff_vector(*F, 1, e.kummer_class());
        return {std::move(out), hi == scope_end ? hi : hi + 1};
    }

    const Session& s_;
    const std::vector<Token>& t_;
    const std::vector<size_t>& match_;
};

int parse_int(const std::string& s, const char* what) {
    try {
        size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        fail("ConfigError", std::string("bad integer for ") + what + ": " + s);
    }
}

}  // namespace

void Session::load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("IoError", "cannot open config " + path);
    config_path_ = path;
    std::string line;
    while (std::getline(in, line)) apply_directive(line);
}

void Session::apply_directive(const std::string& line) {
    std::string s = line.substr(0, line.find('#'));
    std::istringstream in(s);
    std::vector<std::string> words;
    std::string w;
    while (in >> w) words.push_back(w);
    if (words.empty()) return;

    auto kv = [&](const char* key) -> std::optional<std::string> {
        std::string pref = std::string(key) + "=";
        for (size_t i = 2; i < words.size(); ++i)
            if (words[i].rfind(pref, 0) == 0) return words[i].substr(pref.size());
        return std::nullopt;
    };
    auto kv_int = [&](const char* key, std::optional<int> dflt) -> int {
        auto v = kv(key);
        if (!v) {
            if (dflt) return *dflt;
            fail("ConfigError", std::string("missing ") + key + "=");
        }
        return parse_int(*v, key);
    };

    if (words[0] == "field") {
        if (words.size() < 2 || words[1].find('=') != std::string::npos)
            fail("ConfigError", "field needs a name");
        int q = kv_int("q", std::nullopt);
        int ell = kv_int("ell", std::nullopt);
        int n = kv_int("n", std::nullopt);
        int depth = kv_int("depth", std::nullopt);
        int prec = kv_int("precision", 8);
        add_field(words[1],
                  TowerField(q, ell, n, depth,
                             std::vector<int>(static_cast<size_t>(depth), prec)));
        return;
    }
    if (words[0] == "ext") {
        if (words.size() < 2 || words[1].find('=') != std::string::npos)
            fail("ConfigError", "ext needs a name");
        auto fh = kv("field");
        const TowerField& F = fh ? field(*fh) : current_field();
        auto kind = kv("kind");
        if (!kind) fail("ConfigError", "ext needs kind=kummer or kind=unramified");
        if (*kind == "kummer") {
            auto b = kv("b");
            if (!b) fail("ConfigError", "kummer ext needs b=<element>");
            int m = kv_int("m", 1);
            add_extension(words[1],
                          CyclicExtension::make_kummer(F, parse_element(*b, F), m));
        } else if (*kind == "unramified") {
            add_extension(words[1], CyclicExtension::make_unramified(
                                        F, kv_int("f", std::nullopt)));
        } else {
            fail("ConfigError", "unknown ext kind " + *kind);
        }
        return;
    }
    fail("ConfigError", "unknown directive " + words[0]);
}

std::string Session::add_field(TowerField F) {
    std::string name;
    do {
        name = "F" + std::to_string(next_field_++);
    } while (fields_.count(name) || exts_.count(name));
    add_field(name, std::move(F));
    return name;
}

void Session::add_field(const std::string& name, TowerField F) {
    if (fields_.count(name) || exts_.count(name)) fail("DuplicateHandle", name);
    fields_.emplace(name, std::move(F));
    current_ = name;
}

std::string Session::add_extension(CyclicExtension E) {
    std::string name;
    do {
        name = "E" + std::to_string(next_ext_++);
    } while (fields_.count(name) || exts_.count(name));
    add_extension(name, std::move(E));
    return name;
}

void Session::add_extension(const std::string& name, CyclicExtension E) {
    if (fields_.count(name) || exts_.count(name)) fail("DuplicateHandle", name);
    exts_.emplace(name, std::move(E));
}

bool Session::has_field(const std::string& name) const {
    return fields_.count(name) != 0;
}

const TowerField& Session::field(const std::string& name) const {
    auto it = fields_.find(name);
    if (it == fields_.end()) fail("UnknownHandle", "no field named " + name);
    return it->second;
}

const CyclicExtension& Session::extension(const std::string& name) const {
    auto it = exts_.find(name);
    if (it == exts_.end()) fail("UnknownHandle", "no extension named " + name);
    return it->second;
}

const TowerField& Session::current_field() const {
    if (current_.empty()) fail("UnknownHandle", "no field defined yet");
    return fields_.at(current_);
}

FieldElement Session::parse_element(const std::string& expr,
                                    const TowerField& F) const {
    std::vector<Token> tokens = lex(expr);
    std::vector<size_t> match = match_brackets(tokens);
    ElementParser ep(tokens, match, F);
    return ep.parse(0, tokens.size());
}

EvalValue Session::eval(const std::string& expr) const {
    std::vector<Token> tokens = lex(expr);
    std::vector<size_t> match = match_brackets(tokens);
    EvalParser p(*this, tokens, match);
    return p.run();
}

nlohmann::json json_of(const Subgroup& G) {
    return {{"modulus", G.modulus()},
            {"order", G.order()},
            {"rank", G.rank()},
            {"rows", G.rows()}};
}

nlohmann::json json_of(const CohClass& c) {
    return {{"coeffs", c.coeff_vector()},
            {"degree", c.degree()},
            {"field", c.field().describe()},
            {"normal_form", c.str()}};
}

nlohmann::json json_of(const RostReport& rep) {
    nlohmann::json j{{"R", json_of(rep.R)},
                     {"S", json_of(rep.S)},
                     {"alpha", json_of(rep.alpha)},
                     {"period", rep.period},
                     {"quotient_order", rep.quotient_order},
                     {"s_exact", rep.s_exactness == Exactness::Exact},
                     {"witnesses", rep.witnesses}};
    j["rhs_order"] =
        rep.rhs_order ? nlohmann::json(*rep.rhs_order) : nlohmann::json(nullptr);
    j["status"] = rep.status == ReportStatus::Verified ? "verified"
                  : rep.status == ReportStatus::Counterexample
                      ? "counterexample"
                      : "inconclusive";
    return j;
}

nlohmann::json json_of(const SuiteResult& res) {
    nlohmann::json fails = nlohmann::json::array();
    for (const auto& f : res.failures)
        fails.push_back({{"cell", f.cell}, {"detail", f.detail}});
    return {{"cells", res.cells},
            {"exit", res.exit_code()},
            {"failures", fails},
            {"inconclusive", res.inconclusive},
            {"suite", res.suite},
            {"verified", res.verified}};
}

nlohmann::json json_of(const EvalValue& v) {
    switch (v.kind) {
        case EvalValue::Kind::Class:
            return {{"kind", "class"}, {"value", json_of(*v.cls)}};
        case EvalValue::Kind::Pair:
            return {{"boundary_character", json_of(v.parts->second)},
                    {"kind", "decomposition"},
                    {"unramified_part", json_of(v.parts->first)}};
        case EvalValue::Kind::Vector:
            return {{"class_vector", v.cls->as_class_vector()},
                    {"field", v.cls->field().describe()},
                    {"kind", "class_vector"}};
    }
    fail("InternalVerificationFailed", "unhandled eval kind");
}

}  // namespace rostlab
