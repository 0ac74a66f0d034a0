from setuptools import setup

setup(
    name='symtree',
    version='1.0.0',
    description='Tips, extents and critical scaling factors of symmetric binary fractal trees',
    python_requires='>=3.9',
    packages=['src', 'config'],
    py_modules=['main', 'utils'],
    data_files=[('', ['settings.json'])],
    install_requires=[
        'numpy>=1.19.0',
        'scipy>=1.6.0',
        'click>=8.1.0',
    ],
    extras_require={
        'build': ['pyinstaller>=4.5.0'],
        'test': ['pytest>=7.0', 'hypothesis>=6.0'],
    },
    entry_points={
        'console_scripts': ['symtree=src.cli:main'],
    },
)
