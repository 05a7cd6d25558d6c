#include "mustar/measure_spec.hpp"

#include <cctype>
#include <cmath>

namespace mustar {

namespace {

constexpr double kStep = 1.0 / 256.0;

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    Measure parse() {
        Measure m = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        return m;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw SpecParseError(what, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    std::string ident() {
        skip_ws();
        std::size_t s = pos_;
        while (pos_ < text_.size() &&
               (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        if (s == pos_) fail("expected a name");
        return text_.substr(s, pos_ - s);
    }

    double number() {
        skip_ws();
        std::size_t s = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
        bool digits = false;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
            digits = digits || std::isdigit(static_cast<unsigned char>(text_[pos_]));
            ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        if (!digits) fail("expected a number");
        return std::stod(text_.substr(s, pos_ - s));
    }

    // number, number i, or number +/- number i
    cplx complex_number() {
        skip_ws();
        double a = number();
        if (pos_ < text_.size() && (text_[pos_] == 'i' || text_[pos_] == 'j')) {
            ++pos_;
            return cplx{0.0, a};
        }
        skip_ws();
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
            const std::size_t save = pos_;
            double b = number();
            if (pos_ < text_.size() && (text_[pos_] == 'i' || text_[pos_] == 'j')) {
                ++pos_;
                return cplx{a, b};
            }
            pos_ = save;
        }
        return cplx{a, 0.0};
    }

    Measure expr() {
        const std::string name = ident();
        if (name == "zero") return Measure::zero();
        if (name == "cantor") return Measure::cantor();
        if (name == "delta") {
            expect('(');
            const double a = number();
            expect(')');
            return Measure::delta(a);
        }
        if (name == "atoms") {
            expect('[');
            std::vector<Atom> atoms;
            do {
                expect('(');
                const double a = number();
                expect(',');
                const cplx w = complex_number();
                expect(')');
                atoms.push_back(Atom{a, w});
            } while (eat(','));
            expect(']');
            return Measure::atoms(std::move(atoms));
        }
        if (name == "gauss") {
            expect('(');
            const double c = number();
            expect(',');
            const double s = number();
            expect(')');
            if (!(s > 0.0)) fail("gauss: scale must be positive");
            const double half = 8.0 * std::max(s, 1.0);
            const auto n = static_cast<std::size_t>(std::ceil(2.0 * half / kStep)) + 1;
            return Measure::density(GridFunction::sample(GridSpec{c - half, kStep, n}, [&](double x) {
                const double u = (x - c) / s;
                return cplx{std::exp(-M_PI * u * u) / s, 0.0};
            }));
        }
        if (name == "box") {
            expect('(');
            const double a = number();
            expect(',');
            const double b = number();
            expect(')');
            if (!(b > a)) fail("box: needs b > a");
            const double lo = a - 32.0 * kStep;
            const auto n = static_cast<std::size_t>(std::ceil((b - a + 64.0 * kStep) / kStep)) + 1;
            // cell-average sampling keeps the total mass exact
            return Measure::density(GridFunction::sample(GridSpec{lo, kStep, n}, [&](double x) {
                const double l = std::max(x - 0.5 * kStep, a), r = std::min(x + 0.5 * kStep, b);
                return cplx{std::max(r - l, 0.0) / kStep, 0.0};
            }));
        }
        if (name == "sum") {
            expect('[');
            std::vector<std::pair<cplx, Measure>> terms;
            do {
                const cplx c = complex_number();
                expect('*');
                terms.emplace_back(c, expr());
            } while (eat(','));
            expect(']');
            return Measure::sum(std::move(terms));
        }
        if (name == "restrict") {
            expect('(');
            Measure m = expr();
            expect(',');
            const double a = number();
            expect(',');
            const double b = number();
            expect(')');
            if (!(b > a)) fail("restrict: needs b > a");
            return restrict(m, SetOfIntervals::single(a, b));
        }
        fail("unknown measure form '" + name + "'");
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

}  // namespace

Measure parse_measure(const std::string& text) { return Parser(text).parse(); }

}  // namespace mustar
