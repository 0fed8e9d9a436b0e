from dotenv import load_dotenv
import os

load_dotenv()

CAPACITY = int(os.getenv("PARTITION_CAPACITY", "100000"))
CACHE_DIR = os.getenv("PARTITION_CACHE_DIR", "./count_cache")

AUDIT_MAX_WEIGHT = int(os.getenv("AUDIT_MAX_WEIGHT", "14"))
AUDIT_MAX_K = int(os.getenv("AUDIT_MAX_K", "4"))
AUDIT_UNHIT_SAMPLE = int(os.getenv("AUDIT_UNHIT_SAMPLE", "20"))

WORKERS = int(os.getenv("PARTITION_WORKERS", "1"))

SCHEMA_VERSION = 1
