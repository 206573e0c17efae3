#include "vopt/polynomial.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace vopt {

ParseError::ParseError(const std::string& msg, int line, int column)
    : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line), column_(column) {}

namespace {

class Lexer {
public:
    Lexer(const std::string& text, int line) : text_(text), line_(line) {}

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    bool eof() {
        skip_ws();
        return pos_ >= text_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    char take() {
        skip_ws();
        return text_[pos_++];
    }

    int column() const { return static_cast<int>(pos_) + 1; }
    int line() const { return line_; }

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg, line_, column());
    }

    unsigned parse_uint() {
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected an unsigned integer");
        unsigned long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + static_cast<unsigned long>(text_[pos_] - '0');
            if (v > 1000000) fail("integer out of range");
            ++pos_;
        }
        return static_cast<unsigned>(v);
    }

    double parse_number() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            size_t mark = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            } else {
                pos_ = mark; // 'e' was not an exponent
            }
        }
        if (pos_ == start) fail("expected a number");
        return std::strtod(text_.substr(start, pos_ - start).c_str(), nullptr);
    }

private:
    const std::string& text_;
    size_t pos_ = 0;
    int line_;
};

// factor := number | var | var '^' uint
Monomial parse_factor(Lexer& lx, int nvars) {
    Monomial t;
    t.exponents = IVec::Zero(nvars);
    t.coefficient = 1.0;
    char c = lx.peek();
    if (c == 'x') {
        lx.take();
        int col = lx.column();
        unsigned idx = lx.parse_uint();
        if (idx < 1 || static_cast<int>(idx) > nvars)
            throw IndexError("variable x" + std::to_string(idx) + " out of range (nvars=" +
                                 std::to_string(nvars) + ")",
                             lx.line(), col);
        int e = 1;
        if (lx.peek() == '^') {
            lx.take();
            e = static_cast<int>(lx.parse_uint());
        }
        t.exponents[idx - 1] = e;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        t.coefficient = lx.parse_number();
    } else {
        lx.fail(std::string("unexpected character '") + c + "'");
    }
    return t;
}

// term := factor ('*' factor)*
Monomial parse_term(Lexer& lx, int nvars) {
    Monomial t = parse_factor(lx, nvars);
    while (lx.peek() == '*') {
        lx.take();
        Monomial u = parse_factor(lx, nvars);
        t.coefficient *= u.coefficient;
        t.exponents += u.exponents;
    }
    return t;
}

Polynomial parse_expression(Lexer& lx, int nvars) {
    std::vector<Monomial> terms;
    double sign = 1.0;
    if (lx.peek() == '+' || lx.peek() == '-') sign = (lx.take() == '-') ? -1.0 : 1.0;
    for (;;) {
        Monomial t = parse_term(lx, nvars);
        t.coefficient *= sign;
        terms.push_back(std::move(t));
        if (lx.eof()) break;
        char c = lx.peek();
        if (c == '+' || c == '-') {
            lx.take();
            sign = (c == '-') ? -1.0 : 1.0;
        } else {
            lx.fail(std::string("expected '+' or '-', got '") + c + "'");
        }
    }
    return Polynomial(nvars, std::move(terms));
}

std::string strip_comment(const std::string& line) {
    size_t h = line.find('#');
    return h == std::string::npos ? line : line.substr(0, h);
}

bool blank(const std::string& s) {
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

std::vector<double> parse_csv_doubles(const std::string& s, int line_no) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            double v = std::stod(item, &used);
            while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
            if (used != item.size()) throw std::invalid_argument("trailing");
            out.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("bad number '" + item + "'", line_no, 1);
        }
    }
    if (out.empty()) throw ParseError("expected comma-separated numbers", line_no, 1);
    return out;
}

} // namespace

IndexError::IndexError(const std::string& msg, int line, int column)
    : ParseError(msg, line, column) {}

Polynomial parse_polynomial(const std::string& text, int nvars) {
    if (nvars < 1) throw Error("parse: nvars must be positive");
    Lexer lx(text, 1);
    if (lx.eof()) throw ParseError("empty polynomial", 1, 1);
    return parse_expression(lx, nvars);
}

PolyMap parse_poly_map(const std::string& text, int nvars) {
    std::vector<Polynomial> comps;
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        std::string body = strip_comment(line);
        if (blank(body)) continue;
        Lexer lx(body, line_no);
        comps.push_back(parse_expression(lx, nvars));
    }
    if (comps.empty()) throw ParseError("no components found", line_no == 0 ? 1 : line_no, 1);
    return PolyMap(nvars, std::move(comps));
}

ProblemFile load_problem_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    int nvars = -1;
    std::ostringstream body;
    ProblemFile pf;
    while (std::getline(is, line)) {
        ++line_no;
        std::string s = strip_comment(line);
        if (blank(s)) continue;
        if (nvars < 0) {
            if (s.rfind("vars:", 0) != 0)
                throw ParseError("first line must be 'vars: <n>'", line_no, 1);
            try {
                nvars = std::stoi(s.substr(5));
            } catch (const std::exception&) {
                throw ParseError("bad variable count", line_no, 6);
            }
            if (nvars < 1) throw ParseError("variable count must be positive", line_no, 6);
            continue;
        }
        if (s.rfind("tbar:", 0) == 0) {
            auto vals = parse_csv_doubles(s.substr(5), line_no);
            pf.tbar = Eigen::Map<Vec>(vals.data(), static_cast<Eigen::Index>(vals.size()));
            continue;
        }
        if (s.rfind("budget:", 0) == 0) {
            std::stringstream ss(s.substr(7));
            std::string kv;
            while (ss >> kv) {
                size_t eq = kv.find('=');
                if (eq == std::string::npos)
                    throw ParseError("budget entries must be key=value", line_no, 8);
                try {
                    pf.budget[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
                } catch (const std::exception&) {
                    throw ParseError("bad budget value in '" + kv + "'", line_no, 8);
                }
            }
            continue;
        }
        body << s << "\n";
        // remember original line numbers by padding? parse errors below reparse per line
    }
    if (nvars < 0) throw ParseError("missing 'vars:' header", 1, 1);
    pf.map = parse_poly_map(body.str(), nvars);
    if (pf.tbar && pf.tbar->size() != pf.map.ncomponents())
        throw ParseError("tbar length does not match component count", 1, 1);
    return pf;
}

ProblemFile load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open problem file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_problem_text(ss.str());
}

} // namespace vopt
