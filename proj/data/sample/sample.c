/* Ring buffer used by the sampling thread. */
#include <stdio.h>
#include <string.h>

#define RING_SIZE 64

typedef struct {
    int head;
    int tail;
    double values[RING_SIZE];
} ring_t;

static void ring_init(ring_t *r) {
    r->head = 0;
    r->tail = 0; // empty
    memset(r->values, 0, sizeof r->values);
}

static int ring_push(ring_t *r, double v) {
    int next = (r->head + 1) % RING_SIZE;
    if (next == r->tail) {
        return -1;
    }
    r->values[r->head] = v;
    r->head = next;
    return 0;
}

static int ring_pop(ring_t *r, double *out) {
    if (r->head == r->tail)
        return -1;
    *out = r->values[r->tail];
    r->tail = (r->tail + 1) % RING_SIZE;
    return 0;
}

int main(void) {
    ring_t r;
    double x = 1.5e-3;
    ring_init(&r);
    for (int i = 0; i < 10; ++i) {
        ring_push(&r, x * i);
    }
    while (ring_pop(&r, &x) == 0 && x >= 0.0) {
        printf("value: %f\n", x);
    }
    char tag = 'q';
    printf("%c done\n", tag);
    return 0;
}
