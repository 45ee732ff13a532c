#pragma once

#include "primerec/arith.hpp"
#include "primerec/bracket.hpp"
#include "primerec/certifier.hpp"
#include "primerec/driver.hpp"
#include "primerec/primes.hpp"
#include "primerec/report.hpp"
#include "primerec/root_locator.hpp"
