#include "ppopt/qasm.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace ppopt {

std::vector<Gate> ccx_gates(int a, int b, int c) {
    Angle t = Angle::pi_frac(1, 4), td = Angle::pi_frac(-1, 4);
    return {
        Gate::h(c),
        Gate::cnot(b, c), Gate::rz(c, td),
        Gate::cnot(a, c), Gate::rz(c, t),
        Gate::cnot(b, c), Gate::rz(c, td),
        Gate::cnot(a, c), Gate::rz(b, t), Gate::rz(c, t),
        Gate::h(c),
        Gate::cnot(a, b), Gate::rz(a, t), Gate::rz(b, td),
        Gate::cnot(a, b),
    };
}

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1;

    explicit Parser(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(ParseError::Kind::Syntax, line, msg);
    }

    void skip_ws() {
        while (pos < text.size()) {
            char ch = text[pos];
            if (ch == '\n') { ++line; ++pos; }
            else if (std::isspace(static_cast<unsigned char>(ch))) ++pos;
            else if (ch == '/' && pos + 1 < text.size() && text[pos + 1] == '/') {
                while (pos < text.size() && text[pos] != '\n') ++pos;
            } else break;
        }
    }

    bool done() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() { return pos < text.size() ? text[pos] : '\0'; }

    void expect(char ch) {
        skip_ws();
        if (peek() != ch) fail(std::string("expected '") + ch + "'");
        ++pos;
    }

    bool accept(char ch) {
        skip_ws();
        if (peek() == ch) { ++pos; return true; }
        return false;
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (pos == start) fail("expected identifier");
        return text.substr(start, pos - start);
    }

    long integer() {
        skip_ws();
        std::size_t start = pos;
        if (peek() == '-') ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected integer");
        return std::stol(text.substr(start, pos - start));
    }

    std::string balanced_until(char close) {
        std::size_t start = pos;
        int depth = 0;
        while (pos < text.size()) {
            char ch = text[pos];
            if (ch == '(') ++depth;
            else if (ch == close && depth == 0) break;
            else if (ch == ')') --depth;
            else if (ch == '\n') ++line;
            ++pos;
        }
        return text.substr(start, pos - start);
    }
};

// Angle grammar: [-]? (pi | pi/INT | INT*pi/INT | FLOAT)
Angle parse_angle(const std::string& raw, int line) {
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw ParseError(ParseError::Kind::Syntax, line, "empty angle");

    bool neg = false;
    std::size_t i = 0;
    if (s[i] == '-') { neg = true; ++i; }
    else if (s[i] == '+') ++i;
    std::string body = s.substr(i);

    auto make = [&](std::int64_t n, std::int64_t d) {
        return Angle::pi_frac(neg ? -n : n, d);
    };

    std::size_t pi_at = body.find("pi");
    if (pi_at != std::string::npos) {
        std::int64_t num = 1, den = 1;
        std::string before = body.substr(0, pi_at);
        std::string after = body.substr(pi_at + 2);
        if (!before.empty()) {
            if (before.back() != '*')
                throw ParseError(ParseError::Kind::Syntax, line, "bad angle '" + raw + "'");
            num = std::stoll(before.substr(0, before.size() - 1));
        }
        if (!after.empty()) {
            if (after.front() != '/')
                throw ParseError(ParseError::Kind::Syntax, line, "bad angle '" + raw + "'");
            den = std::stoll(after.substr(1));
        }
        return make(num, den);
    }
    try {
        std::size_t used = 0;
        double v = std::stod(body, &used);
        if (used != body.size())
            throw ParseError(ParseError::Kind::Syntax, line, "bad angle '" + raw + "'");
        // integers and clean halves stay exact only via pi forms; plain
        // decimals fall back to float
        return Angle::from_radians(neg ? -v : v);
    } catch (const std::invalid_argument&) {
        throw ParseError(ParseError::Kind::Syntax, line, "bad angle '" + raw + "'");
    }
}

}  // namespace

Circuit parse_qasm(const std::string& text) {
    Parser p(text);
    Circuit c;
    bool have_reg = false;
    std::string reg_name;

    while (!p.done()) {
        int stmt_line = p.line;
        std::string word = p.ident();

        if (word == "OPENQASM") {
            p.balanced_until(';');
            p.expect(';');
            continue;
        }
        if (word == "include") {
            p.balanced_until(';');
            p.expect(';');
            continue;
        }
        if (word == "barrier") {  // no semantics for this optimizer
            p.balanced_until(';');
            p.expect(';');
            continue;
        }
        if (word == "qreg") {
            if (have_reg)
                throw ParseError(ParseError::Kind::MultipleRegisters, stmt_line,
                                 "only one quantum register is supported");
            reg_name = p.ident();
            p.expect('[');
            c.qubit_count = static_cast<int>(p.integer());
            p.expect(']');
            p.expect(';');
            have_reg = true;
            continue;
        }
        if (word == "creg" || word == "measure" || word == "reset" || word == "if") {
            throw ParseError(ParseError::Kind::UnsupportedGate, stmt_line,
                             "unsupported statement '" + word + "'");
        }

        // gate application
        if (!have_reg)
            throw ParseError(ParseError::Kind::Syntax, stmt_line, "gate before qreg");

        Angle angle;
        if (word == "rz") {
            p.expect('(');
            angle = parse_angle(p.balanced_until(')'), stmt_line);
            p.expect(')');
        }

        auto qubit = [&]() {
            std::string r = p.ident();
            if (r != reg_name)
                throw ParseError(ParseError::Kind::Syntax, p.line, "unknown register '" + r + "'");
            p.expect('[');
            long idx = p.integer();
            p.expect(']');
            if (idx < 0 || idx >= c.qubit_count)
                throw ParseError(ParseError::Kind::Syntax, p.line, "qubit index out of range");
            return static_cast<int>(idx);
        };

        if (word == "cx") {
            int a = qubit();
            p.expect(',');
            int b = qubit();
            if (a == b) throw ParseError(ParseError::Kind::Syntax, stmt_line, "cx with equal qubits");
            c.gates.push_back(Gate::cnot(a, b));
        } else if (word == "swap") {
            int a = qubit();
            p.expect(',');
            int b = qubit();
            if (a == b) throw ParseError(ParseError::Kind::Syntax, stmt_line, "swap with equal qubits");
            c.gates.push_back(Gate::swap(a, b));
        } else if (word == "ccx") {
            int a = qubit();
            p.expect(',');
            int b = qubit();
            p.expect(',');
            int d = qubit();
            if (a == b || a == d || b == d)
                throw ParseError(ParseError::Kind::Syntax, stmt_line, "ccx with repeated qubits");
            for (auto& g : ccx_gates(a, b, d)) c.gates.push_back(g);
        } else if (word == "rz") {
            c.gates.push_back(Gate::rz(qubit(), angle));
        } else if (word == "h") {
            c.gates.push_back(Gate::h(qubit()));
        } else if (word == "x") {
            c.gates.push_back(Gate::x(qubit()));
        } else if (word == "t") {
            c.gates.push_back(Gate::rz(qubit(), Angle::pi_frac(1, 4)));
        } else if (word == "tdg") {
            c.gates.push_back(Gate::rz(qubit(), Angle::pi_frac(-1, 4)));
        } else if (word == "s") {
            c.gates.push_back(Gate::rz(qubit(), Angle::pi_frac(1, 2)));
        } else if (word == "sdg") {
            c.gates.push_back(Gate::rz(qubit(), Angle::pi_frac(-1, 2)));
        } else if (word == "z") {
            c.gates.push_back(Gate::rz(qubit(), Angle::pi_frac(1, 1)));
        } else {
            throw ParseError(ParseError::Kind::UnsupportedGate, stmt_line,
                             "unsupported gate '" + word + "'");
        }
        p.expect(';');
    }

    if (!have_reg)
        throw ParseError(ParseError::Kind::Syntax, p.line, "missing qreg declaration");
    return c;
}

Circuit parse_qasm_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    Circuit c = parse_qasm(ss.str());
    auto slash = path.find_last_of('/');
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    if (base.size() > 5 && base.substr(base.size() - 5) == ".qasm")
        base = base.substr(0, base.size() - 5);
    c.name = base;
    return c;
}

std::string emit_qasm(const Circuit& c, bool decompose_swap) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg q[" << c.qubit_count << "];\n";
    auto q = [](int i) { return "q[" + std::to_string(i) + "]"; };
    for (const Gate& g : c.gates) {
        switch (g.kind) {
            case Gate::Kind::Cnot:
                out << "cx " << q(g.q0) << "," << q(g.q1) << ";\n";
                break;
            case Gate::Kind::Rz:
                out << "rz(" << g.angle.to_qasm() << ") " << q(g.q0) << ";\n";
                break;
            case Gate::Kind::H:
                out << "h " << q(g.q0) << ";\n";
                break;
            case Gate::Kind::X:
                out << "x " << q(g.q0) << ";\n";
                break;
            case Gate::Kind::Swap:
                if (decompose_swap) {
                    out << "cx " << q(g.q0) << "," << q(g.q1) << ";\n";
                    out << "cx " << q(g.q1) << "," << q(g.q0) << ";\n";
                    out << "cx " << q(g.q0) << "," << q(g.q1) << ";\n";
                } else {
                    out << "swap " << q(g.q0) << "," << q(g.q1) << ";\n";
                }
                break;
            case Gate::Kind::Other1Q:
                out << g.name << " " << q(g.q0) << ";\n";
                break;
        }
    }
    return out.str();
}

void write_qasm_file(const Circuit& c, const std::string& path, bool decompose_swap) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << emit_qasm(c, decompose_swap);
}

}  // namespace ppopt
