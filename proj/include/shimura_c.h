#ifndef SHIMURA_C_H
#define SHIMURA_C_H

/* C interface to the shimura library. Every call returns a status code;
   on failure shimura_last_error() describes it (per thread). Strings
   returned through char** are owned by the caller and released with
   shimura_free_string. */

#ifdef __cplusplus
extern "C" {
#endif

typedef enum shimura_status {
  SHIMURA_OK = 0,
  SHIMURA_INVALID_ARGUMENT = 1,
  SHIMURA_PARSE_ERROR = 2,
  SHIMURA_NOT_LATIN_SQUARE = 3,
  SHIMURA_NOT_ASSOCIATIVE = 4,
  SHIMURA_NO_IDENTITY = 5,
  SHIMURA_NO_INVERSE = 6,
  SHIMURA_ORDER_CAP_EXCEEDED = 7,
  SHIMURA_NOT_FOUND = 8,
  SHIMURA_DIVISION_BY_ZERO = 9,
  SHIMURA_NOT_RATIONAL = 10,
  SHIMURA_NOT_INTEGRAL = 11,
  SHIMURA_LIFT_FAILED = 12,
  SHIMURA_INDEX_OUT_OF_RANGE = 13,
  SHIMURA_SEARCH_BUDGET_EXCEEDED = 14,
  SHIMURA_GENUS_TOO_SMALL = 15,
  SHIMURA_NEGATIVE_MULTIPLICITY = 16,
  SHIMURA_MISMATCH_WITH_NCW = 17,
  SHIMURA_UNKNOWN_GROUP = 18,
  SHIMURA_INCOMPATIBLE_SIGNATURE = 19,
  SHIMURA_INVALID_SSG = 20,
  SHIMURA_IO_ERROR = 21,
  SHIMURA_MISSING_ROW = 22,
  SHIMURA_EXTRA_ROW = 23,
  SHIMURA_VALUE_MISMATCH = 24,
  SHIMURA_INTERNAL = 99
} shimura_status;

typedef struct shimura_catalog shimura_catalog;
typedef struct shimura_group shimura_group;

const char* shimura_status_name(shimura_status status);
const char* shimura_last_error(void);
void shimura_free_string(char* s);

/* Groups of order <= max_order (at most 24). */
shimura_status shimura_catalog_new(int max_order, shimura_catalog** out);
void shimura_catalog_free(shimura_catalog* cat);
/* order,local_index,name,paper_id,abelian,exponent,class_count */
shimura_status shimura_catalog_csv(shimura_catalog* cat, char** out);

/* spec: catalog id "n#k", a name, a table id "G(n,k)", or a path to a
   group file. File groups of catalog order resolve to their catalog entry. */
shimura_status shimura_group_resolve(shimura_catalog* cat, const char* spec, shimura_group** out);
void shimura_group_free(shimura_group* g);
int shimura_group_order(const shimura_group* g);
/* Descriptor JSON: order, exponent, class sizes, abelian flag, id. */
shimura_status shimura_group_describe(const shimura_group* g, char** out);
shimura_status shimura_group_chartab(const shimura_group* g, char** out);

/* signature: "2,3,3,3" or "(2,3^3)". ssg may be NULL: all Hurwitz classes
   are reported. Otherwise a comma separated list of element indices or of
   words in the generators g1, g2, ... of the group. Output: JSON array of
   reports. */
shimura_status shimura_analyze(const shimura_group* g, const char* signature, const char* ssg, char** out);

/* config_json: the search config schema (may be NULL); environment
   variables apply on top. Output is CSV or JSON per the config format. */
shimura_status shimura_enumerate(shimura_catalog* cat, const char* config_json, char** out);

/* Subgroups of a golden family with their quotient data. max_index <= 0
   keeps every subgroup. Output: JSON. */
shimura_status shimura_subcovers(shimura_catalog* cat, int family_label, int max_index, char** out);

/* golden_path may be NULL for the built-in table. options_json keys:
   genus [lo,hi], empty_genera [..], ssg_node_cap, orbit_state_cap, workers.
   *passed is 1 on PASS. The text report is returned in out. */
shimura_status shimura_verify_table(shimura_catalog* cat, const char* golden_path, const char* options_json,
                                    int* passed, char** out);

/* The golden table compiled into the library (JSON). */
shimura_status shimura_golden_table(char** out);

#ifdef __cplusplus
}
#endif

#endif
