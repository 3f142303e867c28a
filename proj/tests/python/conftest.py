import os
import sys

module_dir = os.environ.get("IDEAFORGE_MODULE_DIR")
if module_dir and module_dir not in sys.path:
    sys.path.insert(0, module_dir)

# Allow importing the pure-python package wrapper from a source checkout.
repo_python = os.path.join(os.path.dirname(__file__), "..", "..", "python")
repo_python = os.path.abspath(repo_python)
if repo_python not in sys.path:
    sys.path.insert(0, repo_python)
