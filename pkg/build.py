import PyInstaller.__main__
import os

# directory holding this script
current_dir = os.path.dirname(os.path.abspath(__file__))

# Data files read at runtime through utils.resource_path
extra_datas = [
    ('settings.json', '.'),
]

for src, _ in extra_datas:
    if not os.path.exists(os.path.join(current_dir, src)):
        print(f"Warning: {src} is missing")

add_data_args = []
for src, dest in extra_datas:
    add_data_args.append(f'--add-data={os.path.join(current_dir, src)}{os.pathsep}{dest}')

PyInstaller.__main__.run([
    'main.py',
    '--name=symtree',
    '--console',
    '--onefile',
    *add_data_args,
    '--hidden-import=src.cli',
    '--hidden-import=config.svg_templates',
    '--hidden-import=scipy.optimize',
    '--hidden-import=numpy',
    '--hidden-import=utils',
    '--clean',
    '--log-level=WARN',
])
