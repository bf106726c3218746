#pragma once

#include "checked.hpp"
#include "word.hpp"
#include "thompson.hpp"
#include "pl.hpp"
#include "backends.hpp"
#include "classes.hpp"
#include "criteria.hpp"
#include "combinatorics.hpp"
#include "gbt.hpp"
#include "window.hpp"
#include "report.hpp"
