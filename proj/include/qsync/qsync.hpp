#pragma once

#include "qsync/automata.hpp"
#include "qsync/circuit.hpp"
#include "qsync/errors.hpp"
#include "qsync/kraus.hpp"
#include "qsync/protocol.hpp"
#include "qsync/qcore.hpp"
#include "qsync/walk.hpp"
