#pragma once

#include "ultra/distance_set.hpp"
#include "ultra/space.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace test {

inline ultra::Rational R(const char* s)
{
    return ultra::Rational::parse(s);
}

inline ultra::Matrix matrix(std::initializer_list<std::initializer_list<const char*>> rows)
{
    ultra::Matrix m;
    for (auto r : rows) {
        std::vector<ultra::Rational> row;
        for (auto v : r)
            row.push_back(R(v));
        m.push_back(row);
    }
    return m;
}

inline ultra::FiniteUltrametricSpace space(std::initializer_list<std::initializer_list<const char*>> rows)
{
    ultra::Matrix m = matrix(rows);
    return ultra::FiniteUltrametricSpace(ultra::default_labels(m.size()), m);
}

/// x1,x2 at distance a; x3 at distance b from both.
inline ultra::FiniteUltrametricSpace triangle(const char* a, const char* b)
{
    return space({{"0", a, b}, {a, "0", b}, {b, b, "0"}});
}

inline ultra::SequencePiece seq(ultra::SequenceFamily f, const char* a, const char* b, unsigned long k = 1,
                                unsigned long n_start = 1)
{
    ultra::SequencePiece s;
    s.family = f;
    s.offset = R(a);
    s.scale = R(b);
    s.exponent = k;
    s.first_index = n_start;
    return s;
}

inline ultra::SequencePiece geo(ultra::SequenceFamily f, const char* a, const char* b, const char* q)
{
    ultra::SequencePiece s;
    s.family = f;
    s.offset = R(a);
    s.scale = R(b);
    s.ratio = R(q);
    return s;
}

inline std::string data_file(const std::string& name)
{
    return std::string(ULTRA_TEST_DATA) + "/" + name;
}

} // namespace test
