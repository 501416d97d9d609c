#pragma once

#include "icisres/errors.hpp"
#include "icisres/rational.hpp"
#include "icisres/monomial.hpp"
#include "icisres/polynomial.hpp"
#include "icisres/series.hpp"
#include "icisres/matrix.hpp"
#include "icisres/random.hpp"
#include "icisres/standard_basis.hpp"
#include "icisres/residue.hpp"
#include "icisres/germ.hpp"
#include "icisres/pairing.hpp"
#include "icisres/corpus.hpp"
#include "icisres/verify.hpp"
#include "icisres/parser.hpp"
#include "icisres/report.hpp"
