#pragma once

#include <hahnpp/asymptotics.hpp>
#include <hahnpp/composition.hpp>
#include <hahnpp/context.hpp>
#include <hahnpp/errors.hpp>
#include <hahnpp/expansion.hpp>
#include <hahnpp/expr.hpp>
#include <hahnpp/format.hpp>
#include <hahnpp/germ.hpp>
#include <hahnpp/json_io.hpp>
#include <hahnpp/polynomial.hpp>
#include <hahnpp/principal_part.hpp>
#include <hahnpp/rational.hpp>
#include <hahnpp/value_group.hpp>
