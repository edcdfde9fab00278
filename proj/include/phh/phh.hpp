#pragma once

// Umbrella header for the PHH hand-history library.

#include "phh/action.hpp"
#include "phh/cards.hpp"
#include "phh/conformance.hpp"
#include "phh/corpus.hpp"
#include "phh/diagnostics.hpp"
#include "phh/document.hpp"
#include "phh/engine.hpp"
#include "phh/eval.hpp"
#include "phh/money.hpp"
#include "phh/toml.hpp"
#include "phh/variant.hpp"
