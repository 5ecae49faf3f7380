#pragma once

#include <stdexcept>
#include <string>

#include "eqalg/green.hpp"

namespace eqa {

// Line-oriented text form of a Mackey functor, Green functor or module.
//
//   eqalg-document 1
//   kind green
//   group 2 1
//   base GF 2 2 1 1 1        (p, k, modulus low-to-high) or "base Z"
//   functor ring
//   level 0 tors 0 0
//   res 0 2x1
//   1
//   1
//   ...
//   end
//   ring 0
//   ...
//
// Extension field entries are written as coefficient vectors "[c0,c1]".
struct Document {
    std::string kind;  // mackey, green, module
    MackeyFunctor mackey;
    GreenFunctor green;
    GreenModule module;

    static Document of(const MackeyFunctor& M);
    static Document of(const GreenFunctor& R);
    static Document of(const GreenModule& X);
    // underlying Mackey functor of whatever is stored
    const MackeyFunctor& functor() const;
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int l, const std::string& msg) : std::runtime_error("line " + std::to_string(l) + ": " + msg), line(l) {}
};

std::string print_document(const Document& d);
Document parse_document(const std::string& text);

std::string format_scalar(const Base& B, const Scalar& x);
std::string format_matrix(const Base& B, const Matrix& M);

// named examples: burnside, constant-Z, constant-Fp, fp-galois,
// twisted-burnside-c5, char-example; aliases constant-F<p>
struct ExampleParams {
    int p = 2;
    int n = 1;
    int k = 2;  // fp-galois field degree
    bool p_given = false;
    bool n_given = false;
};
Document make_example(const std::string& name, ExampleParams prm);
bool is_example_name(const std::string& name);

// C_p Green functor F_p[t]/(t^2) over F_p, the Burnside functor reduced mod p
GreenFunctor char_example(int p);

}  // namespace eqa
