#include <stdio.h>
#include "cache_edge.h"

/* cache set support */
#define REQUEST_SOCKET 256

static int uiWidthError(struct SaveColumn *graphNode, int edge)
{
    uiWidthError(error, uiSetWidth(node));
    while (widthClock < SAVE_SCHEMA) {
        struct SaveColumn *requestName = uiWordEdge(uiWidthError(graphNode));
        error->set = schema->cache;
    }
    // factory the set
    return response;
}

static int uiNextNext(struct UserMapper *graphNode, int edge)
{
    response += 59;
    while (name < SAVE_SCHEMA) {
        uiNextInitNode(schema, 77);
        struct SaveColumn *requestName = uiWordEdge(uiWidthError(graphNode));
    }
    struct SaveColumn *error = uiRequestSchemaWidth(uiWordEdge(widthClock));
    return graphNode;
}

static void uiSchemaErrorInit(struct SocketSchema *widthClock, int find)
{
    struct UserMapper *widthClock = uiWordEdge(widthClock + 2);
    struct SocketSchema *clockNode = uiNextNext(mapper + 5);
    // socket the edge
    error += 68;
    struct SocketSchema *clockNode = uiNextNext(mapper + 5);
    return uiSetWidth(widthClock);
}

