#include "hsolve/catalog.hpp"

#include <cctype>
#include <sstream>

namespace hsolve {

namespace {

struct Token {
    enum Kind { Ident, Number, Punct };
    Kind kind;
    std::string text;
    int col;  // 1-based
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> tokenize(const std::string& line, int line_no) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == '#') break;
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        int col = static_cast<int>(i) + 1;
        if (std::string("[],=+-;^").find(c) != std::string::npos) {
            out.push_back(Token{Token::Punct, std::string(1, c), col});
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
            if (j < line.size() && line[j] == '/') {
                size_t k = j + 1;
                while (k < line.size() && std::isdigit(static_cast<unsigned char>(line[k]))) ++k;
                if (k == j + 1) throw ParseError("malformed rational", line_no, static_cast<int>(j) + 1);
                j = k;
            }
            out.push_back(Token{Token::Number, line.substr(i, j - i), col});
            i = j;
            continue;
        }
        if (is_ident_start(c)) {
            size_t j = i;
            while (j < line.size() && is_ident_char(line[j])) ++j;
            out.push_back(Token{Token::Ident, line.substr(i, j - i), col});
            i = j;
            continue;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_no, col);
    }
    return out;
}

class TermParser {
public:
    TermParser(const std::vector<Token>& tokens, size_t pos, int line_no)
        : tokens_(tokens), pos_(pos), line_(line_no) {}

    bool done() const { return pos_ >= tokens_.size(); }

    const Token& peek() const {
        if (done()) throw ParseError("unexpected end of line", line_, last_col());
        return tokens_[pos_];
    }
    Token next() {
        const Token& t = peek();
        ++pos_;
        return t;
    }
    int last_col() const { return tokens_.empty() ? 1 : tokens_.back().col + 1; }

    /// sign? coefficient? -- shared prefix of every term kind.
    std::pair<Rat, bool> sign_and_coeff() {
        Rat sign(1);
        while (!done() && peek().kind == Token::Punct && (peek().text == "+" || peek().text == "-")) {
            if (next().text == "-") sign = -sign;
        }
        if (!done() && peek().kind == Token::Number) {
            Rat c = rat_parse(next().text);
            return {Rat(sign * c), true};
        }
        return {sign, false};
    }

    std::string expect_ident(const char* what) {
        if (done() || peek().kind != Token::Ident)
            throw ParseError(std::string("expected ") + what, line_, done() ? last_col() : peek().col);
        return next().text;
    }

    void expect_punct(const std::string& p) {
        if (done() || peek().kind != Token::Punct || peek().text != p)
            throw ParseError("expected '" + p + "'", line_, done() ? last_col() : peek().col);
        ++pos_;
    }

    bool accept_punct(const std::string& p) {
        if (!done() && peek().kind == Token::Punct && peek().text == p) {
            ++pos_;
            return true;
        }
        return false;
    }

private:
    const std::vector<Token>& tokens_;
    size_t pos_;
    int line_;
};

int name_index(const std::vector<std::string>& names, const std::string& name, int line, int col) {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    throw ParseError("unknown basis name '" + name + "'", line, col);
}

/// Parses "c1 v1 + c2 v2 - ..." or "0" into coordinates over basis names.
Vec parse_combination(TermParser& p, const std::vector<std::string>& names, int line) {
    Vec v = vec_zero(static_cast<int>(names.size()));
    // A bare "0" denotes the zero vector.
    if (!p.done() && p.peek().kind == Token::Number && p.peek().text == "0") {
        p.next();
        return v;
    }
    for (;;) {
        int col = p.done() ? p.last_col() : p.peek().col;
        auto [coeff, had_number] = p.sign_and_coeff();
        (void)had_number;
        std::string id = p.expect_ident("basis name");
        v[name_index(names, id, line, col)] += coeff;
        if (p.done() || p.peek().text == ";") break;
        if (p.peek().text != "+" && p.peek().text != "-")
            throw ParseError("expected '+', '-' or end of line", line, p.peek().col);
    }
    return v;
}

/// Parses "c a^b + ..." or "0" into a 2-form / bivector coordinate vector.
Vec parse_wedge_terms(TermParser& p, const std::vector<std::string>& names, int line) {
    int n = static_cast<int>(names.size());
    Vec v = vec_zero(static_cast<int>(binom(n, 2)));
    if (!p.done() && p.peek().kind == Token::Number && p.peek().text == "0") {
        p.next();
        return v;
    }
    for (;;) {
        int col = p.done() ? p.last_col() : p.peek().col;
        auto [coeff, had_number] = p.sign_and_coeff();
        (void)had_number;
        std::string a = p.expect_ident("basis name");
        p.expect_punct("^");
        std::string b = p.expect_ident("basis name");
        int ia = name_index(names, a, line, col);
        int ib = name_index(names, b, line, col);
        if (ia == ib) throw ParseError("wedge of a basis vector with itself", line, col);
        Rat c = coeff;
        if (ia > ib) {
            std::swap(ia, ib);
            c = -c;
        }
        v[subset_index({ia, ib}, n)] += c;
        if (p.done()) break;
        if (p.peek().text != "+" && p.peek().text != "-")
            throw ParseError("expected '+', '-' or end of line", line, p.peek().col);
    }
    return v;
}

std::string render_combination(const Vec& v, const std::vector<std::string>& names) {
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 0) continue;
        Rat c = v[k];
        if (first) {
            if (c == -1)
                os << '-';
            else if (c != 1)
                os << rat_str(c) << ' ';
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
            Rat a(abs(c));
            if (a != 1) os << rat_str(a) << ' ';
        }
        os << names[k];
    }
    if (first) os << '0';
    return os.str();
}

std::string render_wedge(const Vec& v, const std::vector<std::string>& names) {
    int n = static_cast<int>(names.size());
    auto pairs = k_subsets(n, 2);
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 0) continue;
        Rat c = v[k];
        if (first) {
            if (c == -1)
                os << '-';
            else if (c != 1)
                os << rat_str(c) << ' ';
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
            Rat a(abs(c));
            if (a != 1) os << rat_str(a) << ' ';
        }
        os << names[pairs[k][0]] << '^' << names[pairs[k][1]];
    }
    if (first) os << '0';
    return os.str();
}

}  // namespace

AlgebraFile parse_algebra_file(const std::string& text, const ParseOptions& options) {
    std::vector<std::string> lines;
    {
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line)) lines.push_back(line);
    }

    std::string name = "unnamed";
    int dim = -1;
    std::vector<std::string> basis;
    struct BracketLine {
        int i, j, line;
        Vec value;
    };
    std::vector<BracketLine> brackets;
    std::map<std::string, std::pair<QMatrix, int>> operators;  // name -> (matrix, line)
    std::map<std::string, Vec> forms;
    std::map<std::string, Vec> subspaces_raw;
    std::map<std::string, std::vector<Vec>> subspaces;
    std::set<std::string> flags;

    std::string pending_operator;
    int pending_rows = 0;

    for (size_t li = 0; li < lines.size(); ++li) {
        int line_no = static_cast<int>(li) + 1;
        std::vector<Token> tokens = tokenize(lines[li], line_no);
        if (tokens.empty()) continue;

        if (!pending_operator.empty()) {
            // Matrix row: dim entries, each an optionally negated rational.
            QMatrix& m = operators.at(pending_operator).first;
            int row = m.rows() - pending_rows;
            TermParser p(tokens, 0, line_no);
            for (int c = 0; c < dim; ++c) {
                Rat sign(1);
                while (!p.done() && p.peek().kind == Token::Punct && (p.peek().text == "-" || p.peek().text == "+")) {
                    if (p.next().text == "-") sign = -sign;
                }
                if (p.done() || p.peek().kind != Token::Number)
                    throw ParseError("expected matrix entry", line_no, p.done() ? p.last_col() : p.peek().col);
                m.at(row, c) = Rat(sign * rat_parse(p.next().text));
            }
            if (!p.done()) throw ParseError("trailing tokens after matrix row", line_no, p.peek().col);
            if (--pending_rows == 0) pending_operator.clear();
            continue;
        }

        if (tokens[0].kind != Token::Ident)
            throw ParseError("expected a directive", line_no, tokens[0].col);
        const std::string& directive = tokens[0].text;
        TermParser p(tokens, 1, line_no);

        if (directive == "name") {
            // names may contain hyphens (kodaira-double), so read the raw
            // remainder of the line rather than a single identifier token
            const std::string& raw = lines[li];
            size_t start = raw.find("name") + 4;
            size_t hash = raw.find('#');
            std::string rest = raw.substr(start, hash == std::string::npos ? raw.size() - start
                                                                           : hash - start);
            size_t a = rest.find_first_not_of(" \t\r");
            size_t b = rest.find_last_not_of(" \t\r");
            if (a == std::string::npos) throw ParseError("expected a name", line_no, tokens[0].col);
            name = rest.substr(a, b - a + 1);
            for (char c : name)
                if (!is_ident_char(c) && c != '-')
                    throw ParseError("invalid character in name", line_no, tokens[0].col);
        } else if (directive == "dim") {
            if (p.done() || p.peek().kind != Token::Number)
                throw ParseError("expected dimension", line_no, p.last_col());
            Rat d = rat_parse(p.next().text);
            if (d.get_den() != 1 || d <= 0) throw ParseError("dimension must be a positive integer", line_no, 1);
            dim = static_cast<int>(d.get_num().get_si());
        } else if (directive == "basis") {
            if (dim < 0) throw ParseError("basis before dim", line_no, tokens[0].col);
            while (!p.done()) basis.push_back(p.expect_ident("basis name"));
            if (static_cast<int>(basis.size()) != dim)
                throw ParseError("basis name count does not match dim", line_no, tokens[0].col);
            for (size_t a = 0; a < basis.size(); ++a)
                for (size_t b = a + 1; b < basis.size(); ++b)
                    if (basis[a] == basis[b])
                        throw ParseError("duplicate basis name '" + basis[a] + "'", line_no, tokens[0].col);
        } else if (directive == "bracket") {
            if (dim < 0 || basis.empty()) throw ParseError("bracket before dim/basis", line_no, tokens[0].col);
            p.expect_punct("[");
            int ci = p.done() ? p.last_col() : p.peek().col;
            std::string a = p.expect_ident("basis name");
            p.expect_punct(",");
            int cj = p.done() ? p.last_col() : p.peek().col;
            std::string b = p.expect_ident("basis name");
            p.expect_punct("]");
            p.expect_punct("=");
            int ia = name_index(basis, a, line_no, ci);
            int ib = name_index(basis, b, line_no, cj);
            if (ia == ib) throw ParseError("bracket of a basis vector with itself", line_no, ci);
            Vec value = parse_combination(p, basis, line_no);
            if (!p.done()) throw ParseError("trailing tokens after bracket", line_no, p.peek().col);
            if (ia > ib) {
                std::swap(ia, ib);
                value = vec_scale(Rat(-1), value);
            }
            for (const BracketLine& bl : brackets)
                if (bl.i == ia && bl.j == ib)
                    throw ParseError("duplicate bracket for this pair", line_no, tokens[0].col);
            brackets.push_back(BracketLine{ia, ib, line_no, std::move(value)});
        } else if (directive == "operator") {
            if (dim < 0) throw ParseError("operator before dim", line_no, tokens[0].col);
            std::string op_name = p.expect_ident("operator name");
            if (!p.done()) throw ParseError("trailing tokens after operator name", line_no, p.peek().col);
            if (operators.count(op_name))
                throw ParseError("duplicate operator '" + op_name + "'", line_no, tokens[0].col);
            operators.emplace(op_name, std::make_pair(QMatrix(dim, dim), line_no));
            pending_operator = op_name;
            pending_rows = dim;
        } else if (directive == "form") {
            if (dim < 0 || basis.empty()) throw ParseError("form before dim/basis", line_no, tokens[0].col);
            std::string form_name = p.expect_ident("form name");
            p.expect_punct("=");
            Vec value = parse_wedge_terms(p, basis, line_no);
            if (!p.done()) throw ParseError("trailing tokens after form", line_no, p.peek().col);
            forms[form_name] = std::move(value);
        } else if (directive == "subspace") {
            if (dim < 0 || basis.empty()) throw ParseError("subspace before dim/basis", line_no, tokens[0].col);
            std::string sub_name = p.expect_ident("subspace name");
            p.expect_punct("=");
            std::vector<Vec> gens;
            for (;;) {
                gens.push_back(parse_combination(p, basis, line_no));
                if (p.done()) break;
                p.expect_punct(";");
            }
            subspaces[sub_name] = std::move(gens);
        } else if (directive == "flags") {
            while (!p.done()) {
                std::string f = p.expect_ident("flag");
                if (f != "abelian_structure_expected" && f != "hypercomplex")
                    throw ParseError("unknown flag '" + f + "'", line_no, tokens[0].col);
                flags.insert(f);
            }
        } else {
            throw ParseError("unknown directive '" + directive + "'", line_no, tokens[0].col);
        }
    }

    if (!pending_operator.empty())
        throw ParseError("operator '" + pending_operator + "' is missing matrix rows",
                         static_cast<int>(lines.size()), 1);
    if (dim < 0) throw ParseError("missing dim", static_cast<int>(lines.size()), 1);
    if (basis.empty())
        for (int i = 0; i < dim; ++i) basis.push_back("e" + std::to_string(i + 1));

    std::vector<StructureEntry> entries;
    for (const BracketLine& bl : brackets)
        for (int k = 0; k < dim; ++k)
            if (bl.value[k] != 0) entries.push_back(StructureEntry{bl.i, bl.j, k, bl.value[k]});
    LieAlgebra algebra(dim, basis, entries);

    if (options.enforce_semantics) {
        if (auto violation = algebra.validate()) {
            std::ostringstream os;
            os << "Jacobi identity fails at triple (" << basis[violation->i] << ", " << basis[violation->j]
               << ", " << basis[violation->k] << "), residual (" << vec_str(violation->residual) << ")";
            throw InputError(os.str());
        }
    }

    AlgebraFile file{name, std::move(algebra), {}, {}, {}, std::move(flags)};
    for (auto& [op_name, pair] : operators) {
        LinearOperator op(std::move(pair.first));
        if (options.enforce_semantics && !op.is_almost_complex())
            throw ParseError("operator " + op_name + " does not square to -Id", pair.second, 1);
        file.operators.emplace(op_name, std::move(op));
    }
    if (options.enforce_semantics && file.flags.count("hypercomplex")) {
        if (!file.operators.count("I") || !file.operators.count("J") || !file.operators.count("K"))
            throw InputError("hypercomplex flag requires operators I, J, K");
        HypercomplexStructure h{file.operators.at("I"), file.operators.at("J"), file.operators.at("K")};
        if (auto violation = h.quaternion_violation())
            throw InputError("quaternion relations fail: " + *violation);
    }
    for (auto& [form_name, coords] : forms)
        file.forms.emplace(form_name, Multivector(dim, 2, true, std::move(coords)));
    for (auto& [sub_name, gens] : subspaces)
        file.subspaces.emplace(sub_name, Subspace::span(dim, gens));
    return file;
}

std::string serialize(const AlgebraFile& file) {
    std::ostringstream os;
    const std::vector<std::string>& names = file.algebra.basis_names();
    int dim = file.algebra.dim();
    os << "name " << file.name << "\n";
    os << "dim " << dim << "\n";
    os << "basis";
    for (const std::string& n : names) os << ' ' << n;
    os << "\n";
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) {
            Vec v = file.algebra.bracket_basis(i, j);
            if (vec_is_zero(v)) continue;
            os << "bracket [" << names[i] << ", " << names[j] << "] = " << render_combination(v, names)
               << "\n";
        }
    for (const auto& [op_name, op] : file.operators) {
        os << "operator " << op_name << "\n";
        for (int r = 0; r < dim; ++r) {
            for (int c = 0; c < dim; ++c) {
                if (c) os << ' ';
                os << rat_str(op.matrix.at(r, c));
            }
            os << "\n";
        }
    }
    for (const auto& [form_name, form] : file.forms)
        os << "form " << form_name << " = " << render_wedge(form.coords(), names) << "\n";
    for (const auto& [sub_name, sub] : file.subspaces) {
        os << "subspace " << sub_name << " = ";
        if (sub.dim() == 0) {
            os << "0";
        } else {
            for (int r = 0; r < sub.dim(); ++r) {
                if (r) os << "; ";
                os << render_combination(sub.basis_row(r), names);
            }
        }
        os << "\n";
    }
    if (!file.flags.empty()) {
        os << "flags";
        for (const std::string& f : file.flags) os << ' ' << f;
        os << "\n";
    }
    return os.str();
}

namespace {

const std::map<std::string, std::string>& builtin_texts() {
    static const std::map<std::string, std::string> entries = {
        {"abelian-4",
         "name abelian-4\n"
         "dim 4\n"
         "basis e1 e2 e3 e4\n"
         "operator I\n"
         "0 -1 0 0\n"
         "1 0 0 0\n"
         "0 0 0 -1\n"
         "0 0 1 0\n"
         "operator J\n"
         "0 0 -1 0\n"
         "0 0 0 1\n"
         "1 0 0 0\n"
         "0 -1 0 0\n"
         "operator K\n"
         "0 0 0 -1\n"
         "0 0 -1 0\n"
         "0 1 0 0\n"
         "1 0 0 0\n"
         "flags abelian_structure_expected hypercomplex\n"},
        {"abelian-8",
         "name abelian-8\n"
         "dim 8\n"
         "basis e1 e2 e3 e4 e5 e6 e7 e8\n"
         "operator I\n"
         "0 -1 0 0 0 0 0 0\n"
         "1 0 0 0 0 0 0 0\n"
         "0 0 0 -1 0 0 0 0\n"
         "0 0 1 0 0 0 0 0\n"
         "0 0 0 0 0 -1 0 0\n"
         "0 0 0 0 1 0 0 0\n"
         "0 0 0 0 0 0 0 -1\n"
         "0 0 0 0 0 0 1 0\n"
         "operator J\n"
         "0 0 -1 0 0 0 0 0\n"
         "0 0 0 1 0 0 0 0\n"
         "1 0 0 0 0 0 0 0\n"
         "0 -1 0 0 0 0 0 0\n"
         "0 0 0 0 0 0 -1 0\n"
         "0 0 0 0 0 0 0 1\n"
         "0 0 0 0 1 0 0 0\n"
         "0 0 0 0 0 -1 0 0\n"
         "operator K\n"
         "0 0 0 -1 0 0 0 0\n"
         "0 0 -1 0 0 0 0 0\n"
         "0 1 0 0 0 0 0 0\n"
         "1 0 0 0 0 0 0 0\n"
         "0 0 0 0 0 0 0 -1\n"
         "0 0 0 0 0 0 -1 0\n"
         "0 0 0 0 0 1 0 0\n"
         "0 0 0 0 1 0 0 0\n"
         "flags abelian_structure_expected hypercomplex\n"},
        {"heisenberg-3",
         "name heisenberg-3\n"
         "dim 3\n"
         "basis e1 e2 e3\n"
         "bracket [e1, e2] = e3\n"},
        {"kodaira",
         "name kodaira\n"
         "dim 4\n"
         "basis x y z t\n"
         "bracket [x, y] = z\n"
         "operator I\n"
         "0 -1 0 0\n"
         "1 0 0 0\n"
         "0 0 0 -1\n"
         "0 0 1 0\n"
         "form omega = x^y\n"
         "subspace f = z; t\n"
         "flags abelian_structure_expected\n"},
        {"iwasawa",
         "name iwasawa\n"
         "dim 6\n"
         "basis e1 e2 e3 e4 e5 e6\n"
         "bracket [e1, e3] = e5\n"
         "bracket [e1, e4] = e6\n"
         "bracket [e2, e3] = e6\n"
         "bracket [e2, e4] = -e5\n"
         "operator I\n"
         "0 -1 0 0 0 0\n"
         "1 0 0 0 0 0\n"
         "0 0 0 -1 0 0\n"
         "0 0 1 0 0 0\n"
         "0 0 0 0 0 -1\n"
         "0 0 0 0 1 0\n"},
        {"kodaira-double",
         "name kodaira-double\n"
         "dim 8\n"
         "basis x y z t x' y' z' t'\n"
         "bracket [x, y] = z\n"
         "bracket [x, x'] = -1/2 t'\n"
         "bracket [x, y'] = 1/2 z'\n"
         "bracket [y, x'] = -1/2 z'\n"
         "bracket [y, y'] = -1/2 t'\n"
         "operator I\n"
         "0 -1 0 0 0 0 0 0\n"
         "1 0 0 0 0 0 0 0\n"
         "0 0 0 -1 0 0 0 0\n"
         "0 0 1 0 0 0 0 0\n"
         "0 0 0 0 0 1 0 0\n"
         "0 0 0 0 -1 0 0 0\n"
         "0 0 0 0 0 0 0 1\n"
         "0 0 0 0 0 0 -1 0\n"
         "operator J\n"
         "0 0 0 0 -1 0 0 0\n"
         "0 0 0 0 0 -1 0 0\n"
         "0 0 0 0 0 0 -1 0\n"
         "0 0 0 0 0 0 0 -1\n"
         "1 0 0 0 0 0 0 0\n"
         "0 1 0 0 0 0 0 0\n"
         "0 0 1 0 0 0 0 0\n"
         "0 0 0 1 0 0 0 0\n"
         "operator K\n"
         "0 0 0 0 0 1 0 0\n"
         "0 0 0 0 -1 0 0 0\n"
         "0 0 0 0 0 0 0 1\n"
         "0 0 0 0 0 0 -1 0\n"
         "0 1 0 0 0 0 0 0\n"
         "-1 0 0 0 0 0 0 0\n"
         "0 0 0 1 0 0 0 0\n"
         "0 0 -1 0 0 0 0 0\n"
         "flags hypercomplex\n"},
    };
    return entries;
}

}  // namespace

std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    for (const auto& [n, t] : builtin_texts()) names.push_back(n);
    return names;
}

const std::string& catalog_text(const std::string& name) {
    const auto& m = builtin_texts();
    auto it = m.find(name);
    if (it == m.end()) throw InputError("unknown catalog entry '" + name + "'");
    return it->second;
}

AlgebraFile catalog_entry(const std::string& name) { return parse_algebra_file(catalog_text(name)); }

AlgebraFile load_algebra(const std::string& path_or_name, const ParseOptions& options) {
    const auto& m = builtin_texts();
    auto it = m.find(path_or_name);
    if (it != m.end()) return parse_algebra_file(it->second, options);
    FILE* f = std::fopen(path_or_name.c_str(), "rb");
    if (!f) throw InputError("no catalog entry or readable file named '" + path_or_name + "'");
    std::string text;
    char buf[4096];
    size_t got;
    while ((got = std::fread(buf, 1, sizeof(buf), f)) > 0) text.append(buf, got);
    std::fclose(f);
    return parse_algebra_file(text, options);
}

}  // namespace hsolve
