#pragma once

#include "wksusy/errors.hpp"
#include "wksusy/qnumbers.hpp"
#include "wksusy/graded_fock.hpp"
#include "wksusy/report.hpp"
#include "wksusy/wk_algebra.hpp"
#include "wksusy/susy_engine.hpp"
#include "wksusy/grassmann.hpp"
#include "wksusy/kfermion_quon.hpp"
#include "wksusy/uqsl2.hpp"
#include "wksusy/diffreal.hpp"
#include "wksusy/fd_spectrum.hpp"
#include "wksusy/coherent_states.hpp"
