#pragma once

#include <twosq/base.hpp>
#include <twosq/constructions.hpp>
#include <twosq/criteria.hpp>
#include <twosq/decide.hpp>
#include <twosq/descriptor_io.hpp>
#include <twosq/local.hpp>
#include <twosq/ntheory.hpp>
#include <twosq/parse.hpp>
#include <twosq/pell.hpp>
#include <twosq/quadfield.hpp>
#include <twosq/selftest.hpp>
