#pragma once

#include "tumbug/correlation.hpp"
#include "tumbug/diagram.hpp"
#include "tumbug/dsl.hpp"
#include "tumbug/error.hpp"
#include "tumbug/grammar.hpp"
#include "tumbug/heuristics.hpp"
#include "tumbug/kinds.hpp"
#include "tumbug/lexicon.hpp"
#include "tumbug/payload.hpp"
#include "tumbug/render_svg.hpp"
#include "tumbug/templates.hpp"
#include "tumbug/value.hpp"
