#include "surd.hpp"

#include <cctype>

namespace sat {

namespace {

void normalize(Surd& s) {
    if (s.b == 0) {
        s.d = 0;
        return;
    }
    if (s.d < 2) throw std::invalid_argument("sqrt argument must be >= 2");
    // pull square factors out of d
    long long d = s.d, out = 1;
    for (long long f = 2; f * f <= d; ++f)
        while (d % (f * f) == 0) {
            d /= f * f;
            out *= f;
        }
    s.b *= out;
    s.d = d;
    if (s.d == 1) {
        s.a += s.b;
        s.b = 0;
        s.d = 0;
    }
}

long long radicand(const Surd& x, const Surd& y) {
    if (x.d != 0 && y.d != 0 && x.d != y.d)
        throw std::invalid_argument("mixed radicands " + std::to_string(x.d) + " and " + std::to_string(y.d));
    return x.d ? x.d : y.d;
}

}  // namespace

Surd::Surd(Q a_, Q b_, long long d_) : a(a_), b(b_), d(d_) { normalize(*this); }

double Surd::value() const {
    return boost::rational_cast<double>(a) + boost::rational_cast<double>(b) * std::sqrt(double(d));
}

Surd operator+(const Surd& x, const Surd& y) {
    Surd s;
    s.a = x.a + y.a;
    s.b = x.b + y.b;
    s.d = radicand(x, y);
    if (s.b == 0) s.d = 0;
    return s;
}

Surd operator-(const Surd& x) {
    Surd s = x;
    s.a = -s.a;
    s.b = -s.b;
    return s;
}

Surd operator-(const Surd& x, const Surd& y) { return x + (-y); }

Surd operator*(const Surd& x, const Surd& y) {
    long long d = radicand(x, y);
    Surd s;
    s.a = x.a * y.a + x.b * y.b * Q(d);
    s.b = x.a * y.b + x.b * y.a;
    s.d = s.b == 0 ? 0 : d;
    return s;
}

bool operator==(const Surd& x, const Surd& y) { return x.a == y.a && x.b == y.b && (x.b == 0 || x.d == y.d); }

Q parse_rational(const std::string& text) {
    std::size_t slash = text.find('/');
    std::size_t used = 0;
    try {
        if (slash == std::string::npos) {
            long long p = std::stoll(text, &used);
            if (used != text.size()) throw std::invalid_argument("");
            return Q(p);
        }
        long long p = std::stoll(text.substr(0, slash), &used);
        if (used != slash) throw std::invalid_argument("");
        std::string qs = text.substr(slash + 1);
        long long q = std::stoll(qs, &used);
        if (used != qs.size() || q == 0) throw std::invalid_argument("");
        return Q(p, q);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational number: '" + text + "'");
    }
}

Surd parse_surd(const std::string& raw) {
    std::string t;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw std::invalid_argument("empty number");
    std::size_t at = t.find("sqrt(");
    if (at == std::string::npos) return Surd(parse_rational(t));

    std::size_t close = t.find(')', at);
    if (close == std::string::npos) throw std::invalid_argument("unbalanced sqrt in '" + raw + "'");
    long long d;
    try {
        d = std::stoll(t.substr(at + 5, close - at - 5));
    } catch (const std::exception&) {
        throw std::invalid_argument("bad sqrt argument in '" + raw + "'");
    }
    // split "<a><sign><coef>*sqrt(d)[/q]" around the sqrt term
    std::string head = t.substr(0, at), tail = t.substr(close + 1);
    Q scale = 1;
    if (!tail.empty()) {
        if (tail[0] != '/') throw std::invalid_argument("unexpected text after sqrt in '" + raw + "'");
        scale = Q(1) / parse_rational(tail.substr(1));
    }
    if (!head.empty() && head.back() == '*') head.pop_back();
    // find the sign that starts the coefficient term
    std::size_t split = std::string::npos;
    for (std::size_t i = head.size(); i-- > 1;)
        if ((head[i] == '+' || head[i] == '-') && head[i - 1] != '/') {
            split = i;
            break;
        }
    std::string a_text, coef_text = head;
    if (split != std::string::npos) {
        a_text = head.substr(0, split);
        coef_text = head.substr(split);
    }
    Q coef;
    if (coef_text.empty() || coef_text == "+") coef = 1;
    else if (coef_text == "-") coef = -1;
    else coef = parse_rational(coef_text[0] == '+' ? coef_text.substr(1) : coef_text);
    Q a = a_text.empty() ? Q(0) : parse_rational(a_text);
    return Surd(a, coef * scale, d);
}

std::string to_string(const Surd& s) {
    if (s.b == 0) return to_string(s.a);
    std::string out = s.a == 0 ? "" : to_string(s.a) + (s.b > 0 ? "+" : "");
    if (s.b == -1) out += "-";
    else if (s.b != 1) out += to_string(s.b) + "*";
    return out + "sqrt(" + std::to_string(s.d) + ")";
}

}  // namespace sat
