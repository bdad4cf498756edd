#pragma once

#include <gsem/aggregates.hpp>
#include <gsem/ast.hpp>
#include <gsem/equiv.hpp>
#include <gsem/error.hpp>
#include <gsem/formula.hpp>
#include <gsem/ground.hpp>
#include <gsem/parser.hpp>
#include <gsem/term.hpp>
#include <gsem/translate.hpp>
