#pragma once

#include "miniaj/aosg.hpp"
#include "miniaj/ast.hpp"
#include "miniaj/cfg.hpp"
#include "miniaj/diag.hpp"
#include "miniaj/events.hpp"
#include "miniaj/export.hpp"
#include "miniaj/interp.hpp"
#include "miniaj/lexer.hpp"
#include "miniaj/model.hpp"
#include "miniaj/oracle.hpp"
#include "miniaj/parser.hpp"
#include "miniaj/pipeline.hpp"
#include "miniaj/sema.hpp"
#include "miniaj/slicer.hpp"
