#pragma once

#include "sorani/alphabet.hpp"
#include "sorani/eval.hpp"
#include "sorani/phonology.hpp"
#include "sorani/transliterator.hpp"
#include "sorani/unicode.hpp"
