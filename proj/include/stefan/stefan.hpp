#pragma once

#include "stefan/asymptotics.hpp"
#include "stefan/dirichlet.hpp"
#include "stefan/model.hpp"
#include "stefan/oracle.hpp"
#include "stefan/robin.hpp"
#include "stefan/rootfind.hpp"
#include "stefan/specfun.hpp"
