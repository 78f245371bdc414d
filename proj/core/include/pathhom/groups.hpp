#pragma once

// Group carriers: finitely generated abelian groups in invariant-factor
// form, finite groups via multiplication tables, and the voltage-target
// wrapper shared by the fundamental and cayley modules.

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pathhom {

// Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... ; elements are
// integer vectors of size free_rank + k with torsion coordinates reduced
// into [0, d_i).
struct FGAbelian {
    int free_rank = 0;
    std::vector<long long> torsion;

    using Elem = std::vector<long long>;

    int dims() const { return free_rank + static_cast<int>(torsion.size()); }
    bool finite() const { return free_rank == 0; }
    long long order() const;  // finite groups only

    Elem zero() const { return Elem(dims(), 0); }
    Elem reduce(Elem e) const;
    Elem add(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    bool is_zero(const Elem& a) const;
    std::string str(const Elem& a) const;  // "(c1,...,cn)"

    std::vector<Elem> elements() const;  // finite groups only, lexicographic
};

// "Z", "Z^2", "Z/6", "Z^1 + Z/2 + Z/4"
FGAbelian parse_abelian_group(const std::string& text);
// "(1,0)"; plain "3" accepted for one-dimensional groups
FGAbelian::Elem parse_abelian_elem(const FGAbelian& g, const std::string& text);
// semicolon-separated elements: "(1);(3)"
std::vector<FGAbelian::Elem> parse_gen_list(const FGAbelian& g, const std::string& text);

// Finite group given by its full multiplication table.  Element 0 must be
// the identity; closure and two-sided inverses are validated.
struct FiniteGroup {
    std::vector<std::string> elem_names;
    std::vector<std::vector<int>> mult;  // mult[a][b] = a*b

    static FiniteGroup make(std::vector<std::string> names, std::vector<std::vector<int>> mult);
    int size() const { return static_cast<int>(elem_names.size()); }
    int mul(int a, int b) const { return mult.at(a).at(b); }
    int inverse(int a) const;
    std::optional<int> index_of(const std::string& name) const;
};

// Voltage target: Z^k / finitely generated abelian, or a finite group table.
class VoltageGroup {
public:
    struct Elem {
        std::vector<long long> vec;  // abelian carrier
        int idx = -1;                // table carrier
        bool operator==(const Elem&) const = default;
    };

    static VoltageGroup abelian(FGAbelian g);
    static VoltageGroup table(FiniteGroup g);

    bool is_abelian() const { return ab_.has_value(); }
    Elem identity() const;
    Elem mul(const Elem& a, const Elem& b) const;
    std::string str(const Elem& e) const;
    Elem parse(const std::string& text) const;

private:
    std::optional<FGAbelian> ab_;
    std::optional<FiniteGroup> tab_;
};

}  // namespace pathhom
