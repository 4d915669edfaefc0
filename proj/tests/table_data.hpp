#pragma once

// Frozen expected values for the integration and acceptance suites.

#include <cstdint>
#include <utility>
#include <vector>

namespace testdata {

// Ideal-norm counts for X0(11), N = 63: the first 60 nonzero coefficients.
inline const std::vector<std::pair<long, long>> kZeta63 = {
    {1, 1},        {7, 18},      {11, 72},     {49, 171},    {77, 1296},   {121, 2652},
    {313, 36},     {343, 1158},  {539, 12312}, {607, 36},    {613, 36},    {847, 47736},
    {983, 36},     {1217, 36},   {1327, 36},   {1331, 66552},{1607, 36},   {2191, 648},
    {2203, 36},    {2401, 6309}, {3167, 36},   {3181, 36},   {3443, 2592}, {3773, 83376},
    {3853, 36},    {4249, 648},  {4291, 648},  {4643, 36},   {4651, 36},   {4801, 108},
    {5929, 453492},{6241, 18},   {6269, 36},   {6311, 36},   {6337, 36},   {6359, 36},
    {6561, 18},    {6677, 2592}, {6743, 2592}, {6881, 648},  {6959, 36},   {7517, 36},
    {7723, 36},    {8519, 648},  {9283, 36},   {9289, 648},  {9317, 1197936},{9349, 108},
    {9371, 36},    {10067, 36},  {10069, 36},  {10813, 2592},{10957, 36},  {11071, 36},
    {11249, 648},  {11299, 108}, {11437, 36},  {11449, 216}, {11897, 36},  {12491, 36},
};

// Factorization-type distribution for N = 63: (type, aggregated class mass).
inline const std::vector<std::pair<const char*, long>> kDist63 = {
    {"3456 x 1", 1},
    {"432 x 1 + 1512 x 2", 56},
    {"108 x 1 + 378 x 2 + 108 x 3 + 378 x 6", 1792},
    {"36 x 1 + 126 x 2 + 24 x 3 + 84 x 6 + 36 x 9 + 126 x 18", 12096},
    {"36 x 1 + 198 x 2 + 504 x 6", 12096},
    {"36 x 1 + 36 x 2 + 54 x 6 + 36 x 7 + 36 x 14 + 54 x 42", 10368},
    {"36 x 1 + 198 x 2 + 36 x 7 + 198 x 14", 5184},
    {"864 x 1 + 864 x 3", 32},
    {"108 x 1 + 108 x 3 + 504 x 6", 3584},
    {"36 x 1 + 24 x 3 + 126 x 6 + 36 x 9 + 126 x 18", 24192},
    {"36 x 1 + 24 x 3 + 36 x 7 + 36 x 9 + 24 x 21 + 36 x 63", 10368},
    {"108 x 1 + 108 x 3 + 108 x 7 + 108 x 21", 1536},
    {"288 x 1 + 192 x 3 + 288 x 9", 216},
    {"432 x 1 + 504 x 6", 112},
    {"432 x 1 + 432 x 7", 48},
    {"1728 x 2", 167},
    {"432 x 2 + 12 x 3 + 426 x 6", 12096},
    {"18 x 2 + 36 x 3 + 120 x 6 + 36 x 9 + 126 x 18", 24192},
    {"54 x 2 + 12 x 3 + 48 x 6 + 54 x 14 + 12 x 21 + 48 x 42", 10368},
    {"216 x 2 + 504 x 6", 12656},
    {"18 x 2 + 12 x 6 + 18 x 14 + 18 x 18 + 12 x 42 + 18 x 126", 31104},
    {"54 x 2 + 54 x 6 + 54 x 14 + 54 x 42", 25344},
    {"144 x 2 + 96 x 6 + 144 x 18", 12744},
    {"216 x 2 + 216 x 14", 5328},
    {"1152 x 3", 47058},
    {"12 x 3 + 570 x 6", 338688},
    {"36 x 3 + 126 x 6 + 36 x 9 + 126 x 18", 157248},
    {"12 x 3 + 66 x 6 + 12 x 21 + 66 x 42", 114048},
    {"288 x 3 + 288 x 9", 49464},
    {"36 x 3 + 36 x 9 + 36 x 21 + 36 x 63", 51840},
    {"144 x 3 + 144 x 21", 41184},
    {"864 x 4", 10020},
    {"108 x 4 + 252 x 12", 24192},
    {"72 x 4 + 48 x 12 + 72 x 36", 18144},
    {"108 x 4 + 108 x 28", 5184},
    {"576 x 6", 386814},
    {"144 x 6 + 144 x 18", 305640},
    {"18 x 6 + 18 x 18 + 18 x 42 + 18 x 126", 155520},
    {"72 x 6 + 72 x 42", 237600},
    {"432 x 8", 33648},
    {"108 x 8 + 108 x 24", 41664},
    {"36 x 8 + 24 x 24 + 36 x 72", 36288},
    {"54 x 8 + 54 x 56", 10368},
    {"288 x 12", 614664},
    {"72 x 12 + 72 x 36", 90720},
    {"36 x 12 + 36 x 84", 134784},
    {"216 x 16", 45696},
    {"54 x 16 + 54 x 48", 83328},
    {"18 x 16 + 12 x 48 + 18 x 144", 72576},
    {"144 x 24", 1583136},
    {"36 x 24 + 36 x 72", 181440},
    {"18 x 24 + 18 x 168", 269568},
    {"72 x 48", 1395072},
    {"18 x 48 + 18 x 144", 362880},
};

inline constexpr const char* kType4425q73 =
    "80 x 29 + 2360 x 58 + 80 x 87 + 4800 x 116 + 2360 x 174 + 4800 x 348 + 6000 x 580 + "
    "6000 x 1740";

inline constexpr const char* kType4425q4391 =
    "2320 x 1 + 3480 x 2 + 1856 x 5 + 2784 x 10 + 2320 x 25 + 4720 x 29 + 3480 x 50 + "
    "7080 x 58 + 3776 x 145 + 5664 x 290 + 4720 x 725 + 7080 x 1450";

inline constexpr const char* kType63q11 =
    "6 x (6,1) + 12 x (6,3) + 36 x (9,9) + 6 x (42,7) + 12 x (42,21) + 36 x (63,63)";

inline constexpr const char* kType63q3 = "18 x (48,6) + 6 x (432,9)";
inline constexpr const char* kType63q7 = "18 x (6,6) + 18 x (18,6) + 18 x (42,7) + 18 x (126,7)";
inline constexpr const char* kType63q313 = "36 x 1 + 24 x 3 + 126 x 6 + 36 x 9 + 126 x 18";

}  // namespace testdata
