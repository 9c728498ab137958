#pragma once

#include "ncdiff/scalar.hpp"
#include "ncdiff/linalg.hpp"
#include "ncdiff/algebra.hpp"
#include "ncdiff/tensor.hpp"
#include "ncdiff/frame.hpp"
#include "ncdiff/leibniz.hpp"
#include "ncdiff/parse.hpp"
#include "ncdiff/tables.hpp"
#include "ncdiff/poly.hpp"
#include "ncdiff/jets.hpp"
