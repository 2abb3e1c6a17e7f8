#pragma once

#include "growth/analytic.hpp"
#include "growth/automaton.hpp"
#include "growth/certify.hpp"
#include "growth/count_table.hpp"
#include "growth/counting.hpp"
#include "growth/dfa.hpp"
#include "growth/family.hpp"
#include "growth/io.hpp"
#include "growth/rational.hpp"
#include "growth/word.hpp"
