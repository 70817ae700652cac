#include "fj/projective.hpp"

#include <cctype>
#include <sstream>

namespace fj {

// ---------------------------------------------------------------- LinearForm

bool LinearForm::is_constant() const {
    for (const auto& c : coeffs) {
        if (c != 0) return false;
    }
    return true;
}

std::optional<std::size_t> LinearForm::leading_variable() const {
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] != 0) return k;
    }
    return std::nullopt;
}

Nat LinearForm::evaluate(const PrimeField& field, std::span<const Nat> x) const {
    Nat acc = constant;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] != 0) mpz_addmul(acc.get_mpz_t(), coeffs[k].get_mpz_t(), x[k].get_mpz_t());
    }
    return field.reduce(acc);
}

// ---------------------------------------------------------------- ProjMatrix

Nat determinant(const PrimeField& F, std::size_t size, std::vector<Nat> a) {
    Nat det = 1;
    for (std::size_t col = 0; col < size; ++col) {
        std::size_t pivot = col;
        while (pivot < size && a[pivot * size + col] == 0) ++pivot;
        if (pivot == size) return 0;
        if (pivot != col) {
            for (std::size_t k = 0; k < size; ++k) std::swap(a[pivot * size + k], a[col * size + k]);
            det = F.neg(det);
        }
        const Nat& lead = a[col * size + col];
        det = F.mul(det, lead);
        Nat lead_inv = F.inv(lead);
        for (std::size_t r = col + 1; r < size; ++r) {
            if (a[r * size + col] == 0) continue;
            Nat factor = F.mul(a[r * size + col], lead_inv);
            for (std::size_t k = col; k < size; ++k) {
                a[r * size + k] = F.sub(a[r * size + k], F.mul(factor, a[col * size + k]));
            }
        }
    }
    return det;
}

ProjMatrix::ProjMatrix(PrimeField field, std::size_t size, std::vector<Nat> entries)
    : field_(std::move(field)), size_(size), a_(std::move(entries)) {
    if (size_ < 2) throw Error(ErrorKind::InvalidInput, "projective matrices need size >= 2 (n >= 1)");
    if (a_.size() != size_ * size_) throw Error(ErrorKind::InvalidInput, "matrix entry count does not match size");
    for (auto& v : a_) v = field_.reduce(v);
    if (determinant(field_, size_, a_) == 0) throw Error(ErrorKind::InvalidInput, "matrix is singular");
}

ProjMatrix ProjMatrix::identity(const PrimeField& field, std::size_t size) {
    std::vector<Nat> a(size * size, Nat(0));
    for (std::size_t i = 0; i < size; ++i) a[i * size + i] = 1;
    return ProjMatrix(field, size, std::move(a));
}

ProjMatrix ProjMatrix::parse(const PrimeField& field, const std::string& text) {
    std::vector<std::vector<Nat>> rows;
    std::stringstream rs(text);
    std::string row;
    while (std::getline(rs, row, ';')) {
        std::vector<Nat> r;
        std::stringstream cs(row);
        std::string cell;
        while (std::getline(cs, cell, ',')) {
            std::string t;
            for (char ch : cell) {
                if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
            }
            bool negative = !t.empty() && t.front() == '-';
            if (negative) t.erase(0, 1);
            Nat v = parse_nat(t);
            r.push_back(field.reduce(negative ? Nat(-v) : v));
        }
        rows.push_back(std::move(r));
    }
    const std::size_t size = rows.size();
    std::vector<Nat> a;
    for (auto& r : rows) {
        if (r.size() != size) throw Error(ErrorKind::InvalidInput, "matrix '" + text + "' is not square");
        a.insert(a.end(), r.begin(), r.end());
    }
    return ProjMatrix(field, size, std::move(a));
}

ProjMatrix ProjMatrix::operator*(const ProjMatrix& o) const {
    std::vector<Nat> out(size_ * size_, Nat(0));
    for (std::size_t i = 0; i < size_; ++i) {
        for (std::size_t k = 0; k < size_; ++k) {
            const Nat& aik = at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < size_; ++j) {
                mpz_addmul(out[i * size_ + j].get_mpz_t(), aik.get_mpz_t(), o.at(k, j).get_mpz_t());
            }
        }
    }
    for (auto& v : out) v = field_.reduce(v);
    return ProjMatrix(Unchecked{}, field_, size_, std::move(out));
}

ProjMatrix ProjMatrix::power(unsigned k) const {
    ProjMatrix result = identity(field_, size_);
    for (unsigned i = 0; i < k; ++i) result = result * *this;
    return result;
}

ProjMatrix ProjMatrix::scaled(const Nat& c) const {
    Nat s = field_.reduce(c);
    if (s == 0) throw Error(ErrorKind::InvalidInput, "scaling a projective matrix by zero");
    std::vector<Nat> out(a_);
    for (auto& v : out) v = field_.mul(v, s);
    return ProjMatrix(Unchecked{}, field_, size_, std::move(out));
}

std::vector<Nat> ProjMatrix::apply(std::span<const Nat> v) const {
    std::vector<Nat> out(size_, Nat(0));
    for (std::size_t i = 0; i < size_; ++i) {
        for (std::size_t k = 0; k < size_; ++k) mpz_addmul(out[i].get_mpz_t(), at(i, k).get_mpz_t(), v[k].get_mpz_t());
        out[i] = field_.reduce(out[i]);
    }
    return out;
}

std::string ProjMatrix::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < size_; ++i) {
        if (i) s += ';';
        for (std::size_t j = 0; j < size_; ++j) {
            if (j) s += ',';
            s += at(i, j).get_str();
        }
    }
    return s;
}

// ----------------------------------------------------------------- ProjPoint

ProjPoint ProjPoint::canonical(const PrimeField& field, std::vector<Nat> coords) {
    if (coords.empty()) throw Error(ErrorKind::InvalidInput, "projective point needs coordinates");
    for (auto& c : coords) c = field.reduce(c);
    std::size_t last = coords.size();
    while (last > 0 && coords[last - 1] == 0) --last;
    if (last == 0) throw Error(ErrorKind::InvalidInput, "the zero vector is not a projective point");
    if (coords[last - 1] != 1) {
        Nat s = field.inv(coords[last - 1]);
        for (std::size_t k = 0; k < last; ++k) coords[k] = field.mul(coords[k], s);
    }
    return ProjPoint(std::move(coords));
}

ProjPoint ProjPoint::lift(const AffinePoint& x) {
    std::vector<Nat> c(x);
    c.emplace_back(1);
    return ProjPoint(std::move(c));
}

AffinePoint ProjPoint::dehomogenize() const {
    if (!in_affine_chart()) throw Error(ErrorKind::InvalidInput, "point at infinity has no affine image");
    return AffinePoint(c_.begin(), c_.end() - 1);
}

// ------------------------------------------------------------------ maps

ProjMatrix companion_matrix(const FpPoly& f) {
    if (!f.is_monic()) throw Error(ErrorKind::InvalidInput, "companion matrix needs a monic polynomial");
    if (f.degree() < 2) throw Error(ErrorKind::InvalidInput, "companion matrix needs degree >= 2");
    const PrimeField& F = f.field();
    const std::size_t s = static_cast<std::size_t>(f.degree());
    std::vector<Nat> a(s * s, Nat(0));
    for (std::size_t i = 1; i < s; ++i) a[i * s + (i - 1)] = 1;
    for (std::size_t i = 0; i < s; ++i) a[i * s + (s - 1)] = F.neg(f.coefficient(i));
    return ProjMatrix(F, s, std::move(a));
}

FpPoly char_poly(const ProjMatrix& m) {
    const PrimeField& F = m.field();
    const std::size_t s = m.size();
    std::vector<std::vector<Nat>> h(s, std::vector<Nat>(s));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) h[i][j] = m.at(i, j);

    // Similarity reduction to upper Hessenberg form.
    for (std::size_t j = 0; j + 2 < s; ++j) {
        std::size_t piv = j + 1;
        while (piv < s && h[piv][j] == 0) ++piv;
        if (piv == s) continue;
        if (piv != j + 1) {
            std::swap(h[piv], h[j + 1]);
            for (std::size_t r = 0; r < s; ++r) std::swap(h[r][piv], h[r][j + 1]);
        }
        Nat inv = F.inv(h[j + 1][j]);
        for (std::size_t k = j + 2; k < s; ++k) {
            if (h[k][j] == 0) continue;
            Nat u = F.mul(h[k][j], inv);
            for (std::size_t c = 0; c < s; ++c) h[k][c] = F.sub(h[k][c], F.mul(u, h[j + 1][c]));
            for (std::size_t r = 0; r < s; ++r) h[r][j + 1] = F.add(h[r][j + 1], F.mul(u, h[r][k]));
        }
    }

    // p_{k+1} = (x - h_kk) p_k - sum_{i<k} h_ik (h_{i+1,i} ... h_{k,k-1}) p_i
    std::vector<FpPoly> p{FpPoly::constant(F, 1)};
    const FpPoly x = FpPoly::monomial(F, 1);
    for (std::size_t k = 0; k < s; ++k) {
        FpPoly next = (x - FpPoly::constant(F, h[k][k])) * p[k];
        Nat prod = 1;
        for (std::size_t i = k; i-- > 0;) {
            prod = F.mul(prod, h[i + 1][i]);
            if (prod == 0) break;
            next = next - p[i].scaled(F.mul(h[i][k], prod));
        }
        p.push_back(std::move(next));
    }
    return p[s];
}

bool is_transitive(const ProjMatrix& m, const std::optional<FactoredInteger>& hint) {
    return is_projectively_primitive(char_poly(m), hint);
}

ProjPoint apply_map(const ProjMatrix& m, const ProjPoint& p) {
    return ProjPoint::canonical(m.field(), m.apply(p.coords()));
}

RationalTuple dehom(const ProjMatrix& m) {
    const std::size_t n = m.n();
    auto row_form = [&](std::size_t r) {
        std::vector<Nat> c(n);
        for (std::size_t k = 0; k < n; ++k) c[k] = m.at(r, k);
        return LinearForm(std::move(c), m.at(r, n));
    };
    RationalTuple out;
    for (std::size_t h = 0; h < n; ++h) out.numerators.push_back(row_form(h));
    out.denominator = row_form(n);
    return out;
}

unsigned jump_index(const ProjMatrix& m, const ProjPoint& p, JumpBound bound) {
    if (!p.in_affine_chart()) throw Error(ErrorKind::InvalidInput, "jump index is defined for points of the affine chart");
    const std::size_t n = m.n();
    ProjPoint q = p;
    for (unsigned k = 1;; ++k) {
        q = apply_map(m, q);
        if (q.in_affine_chart()) return k;
        if (bound == JumpBound::Transitive && k >= n + 1) {
            throw Error(ErrorKind::InternalContradiction, "jump index exceeds n+1 for a map claimed transitive");
        }
    }
}

AffinePoint psi_reference(const ProjMatrix& m, const AffinePoint& x) {
    if (x.size() != m.n()) throw Error(ErrorKind::InvalidInput, "point dimension does not match the map");
    ProjPoint q = ProjPoint::lift(x);
    const std::size_t n = m.n();
    for (std::size_t k = 1;; ++k) {
        q = apply_map(m, q);
        if (q.in_affine_chart()) return q.dehomogenize();
        if (k >= n + 1) throw Error(ErrorKind::InternalContradiction, "orbit did not return to U within n+1 steps");
    }
}

}  // namespace fj
